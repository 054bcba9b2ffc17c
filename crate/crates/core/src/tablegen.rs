//! Regenerates the symbolic free-action and hyperelliptic columns from computed instances.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::classify::InvolutionReport;
use crate::families::{manifold_specs, Family, GroupSpec};
use crate::quintuple::canonical_s;
use crate::s3groups::S3SubgroupKind;
use crate::tables::{arm, block_kind, odd_s, rows, Block, Flag};
use crate::{Error, Result};

/// Instances needed per branch of a conditional cell.
pub const MIN_PER_BRANCH: usize = 4;

#[derive(Clone, Debug)]
struct Instance {
    parent: GroupSpec,
    ext: GroupSpec,
    kinds: [S3SubgroupKind; 4],
    printed: [Flag; 2],
    computed: [bool; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cell {
    /// Cell text read off the encoded table; empty when the table leaves it blank.
    pub printed: String,
    /// Cell text recovered from the computed flags.
    pub regenerated: String,
    /// Instance count on each side of the condition.
    pub branches: Vec<(String, usize)>,
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub table: u8,
    pub block: &'static str,
    pub position: usize,
    pub label: &'static str,
    pub du_val: String,
    pub instances: usize,
    pub free: Cell,
    pub hyperelliptic: Cell,
}

type Condition = (&'static str, &'static str, fn(&GroupSpec) -> bool);

const CONDITIONS: [Condition; 6] = [
    ("m even", "m odd", |p| p.m % 2 == 0),
    ("m odd", "m even", |p| p.m % 2 == 1),
    ("n even", "n odd", |p| p.n % 2 == 0),
    ("n odd", "n even", |p| p.n % 2 == 1),
    ("mn even", "mn odd", |p| p.m * p.n % 2 == 0),
    ("mn odd", "mn even", |p| p.m * p.n % 2 == 1),
];

/// Collects instances of every table row over a sweep of parents.
#[derive(Default)]
pub struct TableGen {
    rows: BTreeMap<(u8, &'static str, usize), (&'static str, Vec<Instance>)>,
}

impl TableGen {
    pub fn new() -> TableGen {
        TableGen::default()
    }

    pub fn add(&mut self, parent: &GroupSpec, reports: &[InvolutionReport]) -> Result<()> {
        let Some(block) = arm(parent) else {
            return Ok(());
        };
        let table = match block_kind(parent) {
            Block::General => 7,
            Block::SmallIndex => 8,
        };
        let printed_rows = rows(parent)?;
        for r in reports {
            let position = printed_rows
                .iter()
                .position(|row| row.ext == r.class.row.ext)
                .ok_or_else(|| Error::Consistency(format!("{}: {} is not a row", parent, r.class.row.ext)))?;
            let row = &printed_rows[position];
            let inst = Instance {
                parent: parent.canonical(),
                ext: row.ext,
                kinds: row.ext.construct()?.kinds(),
                printed: [row.free, row.hyperelliptic],
                computed: [r.acts_freely, r.hyperelliptic],
            };
            self.rows.entry((table, block, position)).or_insert((row.label, Vec::new())).1.push(inst);
        }
        Ok(())
    }

    /// One regenerated row per table position, optionally restricted to table 7 or 8.
    pub fn finish(&self, table: Option<u8>) -> Vec<TableRow> {
        self.rows
            .iter()
            .filter(|((t, _, _), _)| table.is_none_or(|w| w == *t))
            .map(|(&(table, block, position), (label, insts))| {
                let need = if fixed_parameters(block) { 1 } else { MIN_PER_BRANCH };
                TableRow {
                    table,
                    block,
                    position,
                    label,
                    du_val: du_val(insts),
                    instances: insts.len(),
                    free: cell(insts, 0, need),
                    hyperelliptic: cell(insts, 1, need),
                }
            })
            .collect()
    }
}

/// The `per_block` smallest free parents of every table block, searched up to `max_order`.
pub fn sample_parents(per_block: usize, max_order: u64) -> Vec<GroupSpec> {
    let mut specs = manifold_specs(max_order);
    specs.sort_by_key(|g| (g.rotation_order(), *g));
    let mut seen: BTreeMap<&'static str, usize> = BTreeMap::new();
    let mut out: Vec<GroupSpec> = specs
        .into_iter()
        .filter(|g| {
            arm(g).is_some_and(|a| {
                let c = seen.entry(a).or_default();
                *c += 1;
                *c <= per_block
            })
        })
        .collect();
    out.sort();
    out
}

/// Blocks such as "F9(1)" have a single instance.
fn fixed_parameters(block: &str) -> bool {
    let args = &block[block.find('(').unwrap_or(0)..block.find(')').unwrap_or(block.len())];
    !args.contains(['m', 'n', 'r'])
}

fn discover(insts: &[Instance], value: impl Fn(&Instance) -> bool) -> (String, Vec<(String, usize)>) {
    let yes = insts.iter().filter(|i| value(i)).count();
    if yes == insts.len() {
        return ("Y".into(), vec![("all".into(), yes)]);
    }
    if yes == 0 {
        return ("N".into(), vec![("all".into(), insts.len())]);
    }
    for (name, negation, cond) in CONDITIONS {
        if insts.iter().all(|i| value(i) == cond(&i.parent)) {
            return (name.into(), vec![(name.into(), yes), (negation.into(), insts.len() - yes)]);
        }
    }
    ("depends".into(), vec![("Y".into(), yes), ("N".into(), insts.len() - yes)])
}

fn cell(insts: &[Instance], k: usize, need: usize) -> Cell {
    let (regenerated, branches) = discover(insts, |i| i.computed[k]);
    if insts.iter().any(|i| i.printed[k] == Flag::Computed) {
        return Cell { printed: String::new(), regenerated, branches, exact: true };
    }
    let (printed, _) = discover(insts, |i| i.printed[k] == Flag::Yes);
    let agree = insts.iter().all(|i| (i.printed[k] == Flag::Yes) == i.computed[k]);
    let exact = agree && printed == regenerated && branches.iter().all(|(_, c)| *c >= need);
    Cell { printed, regenerated, branches, exact }
}

/// Symbolic order such as "4m" or "2nr" fitting every instance.
fn order_expr(insts: &[Instance], order: impl Fn(&Instance) -> u64) -> Option<String> {
    type Mono = (&'static str, fn(&GroupSpec) -> u64);
    let monos: [Mono; 8] = [
        ("", |_| 1),
        ("m", |p| p.m),
        ("n", |p| p.n),
        ("r", |p| p.r),
        ("mr", |p| p.m * p.r),
        ("nr", |p| p.n * p.r),
        ("mn", |p| p.m * p.n),
        ("mnr", |p| p.m * p.n * p.r),
    ];
    monos.iter().find_map(|&(name, f)| {
        let twice = |i: &Instance| (2 * order(i)) % f(&i.parent) == 0;
        let c = 2 * order(&insts[0]) / f(&insts[0].parent);
        if !insts.iter().all(|i| twice(i) && 2 * order(i) / f(&i.parent) == c) {
            return None;
        }
        Some(match (c % 2, c / 2, name) {
            (0, k, "") => k.to_string(),
            (0, 1, _) => name.to_string(),
            (0, k, _) => format!("{}{}", k, name),
            (_, _, "") => return None,
            (_, 0, _) => format!("{}/2", name),
            (_, _, _) => format!("{}{}/2", c, name),
        })
    })
}

fn kind_expr(insts: &[Instance], k: usize) -> String {
    use S3SubgroupKind::*;
    // D*_4 is the cyclic group C4, so a dihedral column may hold C4 at its smallest instance
    let dihedral = insts.iter().any(|i| matches!(i.kinds[k], BinaryDihedral(_)));
    let first = insts[0].kinds[k];
    let prefix = match first {
        Cyclic(_) if dihedral => "D*_",
        Cyclic(_) => "C_",
        BinaryDihedral(_) => "D*_",
        other => return other.to_string(),
    };
    let same_shape = insts.iter().all(|i| match i.kinds[k] {
        Cyclic(4) => true,
        Cyclic(_) => !dihedral,
        BinaryDihedral(_) => dihedral,
        _ => false,
    });
    let expr = if same_shape { order_expr(insts, |i| i.kinds[k].order().unwrap_or(0)) } else { None };
    match expr {
        Some(e) => format!("{}{}", prefix, e),
        None => first.to_string(),
    }
}

fn twist_expr(insts: &[Instance]) -> Option<&'static str> {
    type Twist = (&'static str, fn(u64, u64) -> u64);
    let candidates: [Twist; 4] = [("s", |_, s| s), ("r+s", |r, s| r + s), ("(r+s)/2", |r, s| (r + s) / 2), ("2s", |_, s| 2 * s)];
    let parent_s = |p: &GroupSpec| if p.family == Family::F1 { odd_s(p.r, p.s) } else { p.s };
    candidates.iter().find_map(|&(name, f)| {
        insts
            .iter()
            .all(|i| canonical_s(f(i.parent.r, parent_s(&i.parent)) as i64, i.ext.r) == canonical_s(i.ext.s as i64, i.ext.r))
            .then_some(name)
    })
}

fn du_val(insts: &[Instance]) -> String {
    let k: Vec<String> = (0..4).map(|k| kind_expr(insts, k)).collect();
    let base = format!("({}/{},{}/{})", k[0], k[1], k[2], k[3]);
    let twisted = insts.iter().all(|i| i.ext.family.has_twist() && i.ext.r > 2);
    match twisted.then(|| twist_expr(insts)).flatten() {
        Some(t) => format!("{}_{}", base, t),
        None => base,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::build_report;

    #[test]
    fn family2_block() {
        let mut gen = TableGen::new();
        for g in manifold_specs(160).iter().filter(|g| g.family == Family::F2) {
            gen.add(g, &build_report(g).unwrap()).unwrap();
        }
        let rows = gen.finish(Some(7));
        let ten = rows.iter().find(|r| r.label == "10").unwrap();
        assert_eq!(ten.du_val, "(D*_4m/D*_4m,D*_4n/D*_4n)");
        assert_eq!(ten.hyperelliptic.regenerated, "n even");
        assert!(ten.hyperelliptic.exact, "{:?}", ten.hyperelliptic);
        assert!(rows.iter().all(|r| r.free.exact && r.hyperelliptic.exact));
    }

    #[test]
    fn fixed_blocks() {
        assert!(fixed_parameters("F9(1)"));
        assert!(fixed_parameters("F1p(1,1,2,1)"));
        assert!(!fixed_parameters("F2(1,n)"));
    }
}
