//! `sepred group ...`

use anyhow::{anyhow, bail, Result};
use clap::{Args, Subcommand, ValueEnum};
use serde_json::json;

use sepred_groups::blocks::{block_systems, is_primitive};
use sepred_groups::enum8::{enumerate_deg8_full_cycle, two_action_scan};
use sepred_groups::lemmas::{nilpotency_class, prime_power, sylow_subgroup, verify_index_lemma};
use sepred_groups::wreath::{wreath, WreathAction, DEFAULT_MAX_POINTS};
use sepred_groups::{Perm, PermGroup};

use crate::{Outcome, Status};

/// A group given by name (S4, A5, C8, D4, AGL1(5)) or by generators.
#[derive(Args, Clone)]
pub struct GroupSpec {
    /// Named group: Sn, An, Cn, Dn (order 2n), AGL1(q).
    #[arg(long)]
    pub group: Option<String>,
    /// Degree for --gen.
    #[arg(long)]
    pub degree: Option<usize>,
    /// Generator in cycle notation on 0..degree, e.g. "(0 1 2)(3 4)".
    #[arg(long = "gen")]
    pub gens: Vec<String>,
}

impl GroupSpec {
    fn build(&self) -> Result<PermGroup> {
        match (&self.group, self.degree) {
            (Some(name), None) if self.gens.is_empty() => named_group(name),
            (None, Some(n)) => {
                let gens: Vec<&str> = self.gens.iter().map(String::as_str).collect();
                Ok(PermGroup::parse(n, &gens)?)
            }
            _ => bail!("give either --group NAME or --degree N with --gen generators"),
        }
    }
}

pub fn named_group(name: &str) -> Result<PermGroup> {
    let s = name.trim().to_ascii_uppercase();
    let num = |t: &str| {
        t.trim_matches(|c| c == '(' || c == ')')
            .parse::<usize>()
            .map_err(|_| anyhow!("bad group name '{name}'"))
    };
    if let Some(q) = s.strip_prefix("AGL1") {
        let q = num(q)?;
        if q < 2 || !(2..q).all(|d| q % d != 0) {
            bail!("AGL1(q) needs a prime q");
        }
        return Ok(PermGroup::agl1(q));
    }
    let (kind, rest) = s.split_at(1.min(s.len()));
    let n = num(rest)?;
    if n == 0 {
        bail!("degree must be positive");
    }
    match kind {
        "S" => Ok(PermGroup::symmetric(n)),
        "A" => Ok(PermGroup::alternating(n)),
        "C" => Ok(PermGroup::cyclic(n)),
        "D" if n >= 3 => Ok(PermGroup::dihedral(n)),
        _ => bail!("unknown group '{name}'"),
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ActionArg {
    Imprimitive,
    Product,
}

#[derive(Subcommand)]
pub enum GroupCommand {
    /// Order, transitivity, blocks and series.
    Basics(GroupSpec),
    /// Wreath product of two named groups.
    Wreath {
        a: String,
        b: String,
        #[arg(long, value_enum, default_value = "imprimitive")]
        action: ActionArg,
        #[arg(long, default_value_t = DEFAULT_MAX_POINTS)]
        max_points: usize,
    },
    /// Index of N ∩ C_q^d in G ∩ C_q^d for G inside AGL_1(q) wreath S_d.
    VerifyIndex {
        #[command(flatten)]
        group: GroupSpec,
        /// Generators of N; defaults to the normal closure of sigma.
        #[arg(long = "normal")]
        normal: Vec<String>,
        #[arg(long)]
        sigma: String,
        #[arg(long)]
        q: usize,
    },
    /// Nilpotency class of a p-group, or of a Sylow subgroup with --sylow.
    Nilpclass {
        #[command(flatten)]
        group: GroupSpec,
        #[arg(long)]
        sylow: Option<u128>,
    },
    /// Subgroups of S_8 containing (0 1 2 3 4 5 6 7), up to conjugacy.
    Enum8,
    /// Minimal-reducibility scan over pairs of degree-8 actions.
    TwoAction,
}

pub fn run(cmd: &GroupCommand) -> Result<Outcome> {
    match cmd {
        GroupCommand::Basics(spec) => basics(&spec.build()?),
        GroupCommand::Wreath {
            a,
            b,
            action,
            max_points,
        } => {
            let action = match action {
                ActionArg::Imprimitive => WreathAction::Imprimitive,
                ActionArg::Product => WreathAction::Product,
            };
            let w = wreath(&named_group(a)?, &named_group(b)?, action, *max_points)?;
            basics(&w)
        }
        GroupCommand::VerifyIndex {
            group,
            normal,
            sigma,
            q,
        } => {
            let g = group.build()?;
            let sigma = Perm::parse(g.degree(), sigma)?;
            let n = if normal.is_empty() {
                g.normal_closure(std::slice::from_ref(&sigma))
            } else {
                let gens: Vec<&str> = normal.iter().map(String::as_str).collect();
                PermGroup::parse(g.degree(), &gens)?
            };
            let r = verify_index_lemma(&g, &n, &sigma, *q)?;
            let text = format!(
                "|G_q| = {}, |N_q| = {}, index {}{}: {}",
                r.g_q_order,
                r.n_q_order,
                r.index,
                if r.second_part_applies {
                    " (equality required)"
                } else {
                    ""
                },
                if r.holds { "holds" } else { "FAILS" }
            );
            let status = if r.holds { Status::Ok } else { Status::Inconsistent };
            Ok(Outcome::new(serde_json::to_value(&r)?, text, status))
        }
        GroupCommand::Nilpclass { group, sylow } => {
            let g = group.build()?;
            let p = match sylow {
                Some(p) => *p,
                None => prime_power(g.order())
                    .map(|(p, _)| p)
                    .ok_or_else(|| anyhow!("order {} is not a prime power; pass --sylow p", g.order()))?,
            };
            let s = sylow_subgroup(&g, p)?;
            let class = nilpotency_class(&s)?;
            let json = json!({ "order": g.order(), "p": p, "sylow_order": s.order(), "class": class });
            let text = format!("Sylow {p}-subgroup of order {} has nilpotency class {class}", s.order());
            Ok(Outcome::new(json, text, Status::Ok))
        }
        GroupCommand::Enum8 => {
            let groups = enumerate_deg8_full_cycle()?;
            let mut lines = Vec::new();
            let mut items = Vec::new();
            for g in &groups {
                let f = &g.fingerprint;
                lines.push(format!(
                    "order {:>5}  primitive {:<5}  solvable {:<5}  blocks {:?}  gens {}",
                    f.order,
                    f.primitive,
                    f.solvable,
                    f.block_sizes,
                    g.group
                        .generators()
                        .iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                ));
                items.push(json!({
                    "generators": g.group.generators().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    "fingerprint": f,
                }));
            }
            lines.push(format!("{} groups", groups.len()));
            Ok(Outcome::new(json!({ "groups": items }), lines.join("\n"), Status::Ok))
        }
        GroupCommand::TwoAction => {
            let groups = enumerate_deg8_full_cycle()?;
            let r = two_action_scan(&groups)?;
            let text = format!(
                "{} groups examined (orders skipped: {:?}), {} second actions, {} with intransitive stabilizer, {} diagonal only, {} survivors",
                r.groups_examined,
                r.skipped,
                r.second_actions,
                r.intransitive_pairs,
                r.diagonal_only,
                r.survivors.len()
            );
            let status = if r.survivors.is_empty() {
                Status::Ok
            } else {
                Status::Inconsistent
            };
            Ok(Outcome::new(serde_json::to_value(&r)?, text, status))
        }
    }
}

fn basics(g: &PermGroup) -> Result<Outcome> {
    let systems = block_systems(g);
    let derived: Vec<u128> = g.derived_series().iter().map(|h| h.order()).collect();
    let json = json!({
        "degree": g.degree(),
        "order": g.order(),
        "generators": g.generators().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "transitive": g.is_transitive(),
        "primitive": is_primitive(g),
        "solvable": g.is_solvable(),
        "abelian": g.is_abelian(),
        "orbits": g.orbits(),
        "block_systems": systems,
        "derived_series": derived,
    });
    let text = format!(
        "degree {}, order {}\ntransitive {}, primitive {}, solvable {}, abelian {}\nblock sizes {:?}\nderived series orders {:?}",
        g.degree(),
        g.order(),
        g.is_transitive(),
        is_primitive(g),
        g.is_solvable(),
        g.is_abelian(),
        systems.iter().map(|p| p[0].len()).collect::<Vec<_>>(),
        derived
    );
    Ok(Outcome::new(json, text, Status::Ok))
}
