//! Extension rows of the fibration and geometric-property tables, instantiated per parent group.

use num_integer::Integer;
use serde::Serialize;

use crate::families::{Family, GroupSpec};
use crate::quintuple::canonical_s;
use crate::seifert::{fibration_family11, fibration_twisted, frac, mod_one, BaseOrbifold, SeifertInvariants};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Flag {
    Yes,
    No,
    /// Left blank in the tables: decided from the Seifert data.
    Computed,
}

impl Flag {
    fn when(c: bool) -> Flag {
        if c {
            Flag::Yes
        } else {
            Flag::No
        }
    }
}

#[derive(Clone, Debug)]
pub enum RowFib {
    Explicit(SeifertInvariants),
    Twisted,
}

#[derive(Clone, Debug)]
pub struct Row {
    pub label: &'static str,
    pub ext: GroupSpec,
    pub free: Flag,
    pub hyperelliptic: Flag,
    pub fib: RowFib,
}

impl Row {
    pub fn fibration(&self) -> Result<SeifertInvariants> {
        match &self.fib {
            RowFib::Explicit(f) => Ok(f.clone()),
            RowFib::Twisted => fibration_twisted(&self.ext),
        }
    }
}

/// Mirror image of a spec under exchanging the left and right factors.
pub fn swap_spec(spec: &GroupSpec) -> GroupSpec {
    if spec.family.has_twist() {
        let s = if spec.r <= 2 {
            1
        } else {
            let e = (spec.s as i64).extended_gcd(&(spec.r as i64));
            e.x.rem_euclid(spec.r as i64) as u64
        };
        GroupSpec::new(spec.family, false, spec.n, spec.m, spec.r, s)
    } else if spec.family.arity() == 2 {
        GroupSpec::new(spec.family, !spec.bis, spec.n, spec.m, 1, 1)
    } else {
        GroupSpec::new(spec.family, !spec.bis, spec.m, spec.n, 1, 1)
    }
}

fn sp(f: Family, m: u64, n: u64) -> GroupSpec {
    GroupSpec::new(f, false, m, n, 1, 1)
}

fn tw(f: Family, m: u64, n: u64, r: u64, s: u64) -> GroupSpec {
    let s = if r <= 1 { 1 } else { s % r };
    GroupSpec::new(f, false, m, n, r, s)
}

fn ex(base: BaseOrbifold, inv: &[(i64, i64)], e: (i64, i64)) -> RowFib {
    let invs = inv.iter().map(|&(p, q)| frac(p, q)).collect();
    RowFib::Explicit(SeifertInvariants::new(base, invs, frac(e.0, e.1)).expect("row arity"))
}

fn row(label: &'static str, ext: GroupSpec, free: Flag, hyper: Flag, fib: RowFib) -> Row {
    Row { label, ext, free, hyperelliptic: hyper, fib }
}

fn s2(c: &[u64]) -> BaseOrbifold {
    BaseOrbifold::sphere(c)
}

fn d2(c: &[u64], k: &[u64]) -> BaseOrbifold {
    BaseOrbifold::disk(c, k)
}

/// Which table block a free parent falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Block {
    General,
    SmallIndex,
}

pub fn block_kind(parent: &GroupSpec) -> Block {
    use Family::*;
    let small = match parent.family {
        F1 => parent.r <= 2,
        F1p => parent.r == 2,
        F2 => parent.m == 1 || parent.n == 2,
        F5 | F7 | F9 => parent.m == 1,
        _ => false,
    };
    if small {
        Block::SmallIndex
    } else {
        Block::General
    }
}

/// The block of rows a free parent instantiates, named by its parameter pattern.
/// Mirror images of a printed block give None.
pub fn arm(parent: &GroupSpec) -> Option<&'static str> {
    use Family::*;
    let p = parent.canonical();
    let (m, n, r) = (p.m, p.n, p.r);
    if p.bis {
        return None;
    }
    Some(match p.family {
        F1 if r == 1 && m > 1 && n == 1 => return None,
        F1 if r == 1 && m == 1 && n == 1 => "F1(1,1,1,1)",
        F1 if r == 1 && m == 1 => "F1(1,n,1,1)",
        F1 if r == 1 => "F1(m,n,1,1)",
        F1 if r == 2 => "F1(m,n,2,1)",
        F1 if r % 2 == 0 => "F1(m,n,r,s), r even",
        F1 => "F1(m,n,r,s), r odd",
        F1p if r == 2 && m > 1 && n == 1 => return None,
        F1p if r == 2 && m == 1 && n == 1 => "F1p(1,1,2,1)",
        F1p if r == 2 && m == 1 => "F1p(1,n,2,1)",
        F1p if r == 2 => "F1p(m,n,2,1)",
        F1p => "F1p(m,n,r,s)",
        F2 if m == 1 => "F2(1,n)",
        F2 if n == 2 => "F2(m,2)",
        F2 => "F2(m,n)",
        F3 => "F3(m,n)",
        F5 if m == 1 => "F5(1)",
        F5 => "F5(m)",
        F6 => "F6(m)",
        F7 if m == 1 => "F7(1)",
        F7 => "F7(m)",
        F9 if m == 1 => "F9(1)",
        F9 => "F9(m)",
        _ => return None,
    })
}

/// All rows for a free-acting parent, one per involution class.
pub fn rows(parent: &GroupSpec) -> Result<Vec<Row>> {
    rows_in(parent, false)
}

/// The general-block formulas evaluated even where the small-index block applies,
/// e.g. the Family 15 row of F7(m) at m = 1.
pub fn general_rows(parent: &GroupSpec) -> Result<Vec<Row>> {
    rows_in(parent, true)
}

fn rows_in(parent: &GroupSpec, general: bool) -> Result<Vec<Row>> {
    use Family::*;
    use Flag::*;
    let p = parent.canonical();
    if p.bis {
        return Err(Error::Structural(format!("{}: tables list the unswapped groups only", parent)));
    }
    let (m, n, r) = (p.m, p.n, p.r);
    let mi = m as i64;
    let ni = n as i64;
    let out = match p.family {
        F1 if r == 1 && m > 1 && n == 1 => return mirrored(&p),
        F1 if r == 1 && m == 1 && n == 1 => vec![
            row("1", tw(F1, 1, 1, 2, 1), No, Yes, ex(s2(&[2, 2]), &[(4, 2), (-2, 2)], (-1, 1))),
            row("1", tw(F1, 2, 1, 1, 1), Yes, No, RowFib::Twisted),
            row("1", tw(F1, 1, 2, 1, 1), Yes, No, RowFib::Twisted),
        ],
        F1 if r == 1 && m == 1 => vec![
            row("1", tw(F1, 2, n, 1, 1), Flag::when(n % 2 == 1), No, RowFib::Twisted),
            row("1", tw(F1, 1, 2 * n, 1, 1), Yes, No, RowFib::Twisted),
            row("2", sp(F2, 1, n), Yes, No, ex(s2(&[2, 2, n]), &[(1, 2), (1, 2), (1, ni)], (-1, ni))),
            row("1", tw(F1, 1, n, 2, 1), Flag::when(n % 2 == 0), No, RowFib::Twisted),
            row("3", sp(F3, 1, n), No, Yes, ex(s2(&[2, 2, n]), &[(2, 2), (2, 2), (1, ni)], (-1, ni))),
        ],
        F1 if r == 1 => {
            let (odd_m, odd_n) = (m % 2 == 1, n % 2 == 1);
            let proj_or_disk = |disk: bool| if disk { d2(&[n], &[]) } else { BaseOrbifold::projective(&[n]) };
            vec![
                row("1", tw(F1, 2 * m, n, 1, 1), Flag::when(odd_n), No, RowFib::Twisted),
                row("2bis", sp(F2, m, n).bis(), Flag::when(odd_n), No, ex(proj_or_disk(!odd_n), &[(mi, ni)], (-mi, ni))),
                row("1", tw(F1, m, n, 2, 1), Flag::when(m * n % 2 == 0), No, RowFib::Twisted),
                row("11", tw(F11, m, n, 1, 1), No, Yes, RowFib::Twisted),
                row(
                    "3",
                    sp(F3, m, n),
                    Flag::when(!odd_m),
                    No,
                    ex(s2(&[2, 2, n]), &[(mi + 1, 2), (mi + 1, 2), (mi, ni)], (-mi, ni)),
                ),
                row("1", tw(F1, m, 2 * n, 1, 1), Flag::when(odd_m), No, RowFib::Twisted),
                row("2", sp(F2, m, n), Flag::when(odd_m), No, ex(s2(&[2, 2, n]), &[(mi, 2), (mi, 2), (mi, ni)], (-mi, ni))),
                row("3bis", sp(F3, m, n).bis(), Flag::when(!odd_n), No, ex(proj_or_disk(odd_n), &[(mi, ni)], (-mi, ni))),
            ]
        }
        F1 if r == 2 => vec![
            row("1", tw(F1, 2 * m, 2 * n, 1, 1), No, No, RowFib::Twisted),
            row("4bis", sp(F4, m, n).bis(), No, No, ex(d2(&[2 * n], &[]), &[(mi + ni, 2 * ni)], (-mi, 2 * ni))),
            row("11", tw(F11, m, n, 2, 1), No, Yes, RowFib::Twisted),
            row("1", tw(F1, m, n, 4, 1), Yes, No, RowFib::Twisted),
            row(
                "4",
                sp(F4, m, n),
                No,
                No,
                ex(s2(&[2, 2, 2 * n]), &[(mi, 2), (mi + 1, 2), (mi + ni, 2 * ni)], (-mi, 2 * ni)),
            ),
        ],
        F1 => {
            let s = odd_s(r, p.s);
            if r % 2 == 0 {
                vec![
                    row("1", tw(F1, m, n, 2 * r, s), Computed, No, RowFib::Twisted),
                    row("1", tw(F1, 2 * m, 2 * n, r / 2, s % (r / 2)), Computed, No, RowFib::Twisted),
                    row("1", tw(F1, m, n, 2 * r, r + s), Computed, No, RowFib::Twisted),
                    row("11", tw(F11, m, n, r, s), No, Yes, RowFib::Twisted),
                ]
            } else {
                vec![
                    row("1", tw(F1, m, n, 2 * r, s), Computed, No, RowFib::Twisted),
                    row("1", tw(F1, 2 * m, n, r, (r + s) / 2), Computed, No, RowFib::Twisted),
                    row("1", tw(F1, m, 2 * n, r, (2 * s) % r), Computed, No, RowFib::Twisted),
                    row("11", tw(F11, m, n, r, s), No, Yes, RowFib::Twisted),
                ]
            }
        }
        F1p if r == 2 && m > 1 && n == 1 => return mirrored(&p),
        F1p if r == 2 && m == 1 && n == 1 => vec![
            row("1'", tw(F1p, 1, 1, 4, 1), No, Yes, ex(s2(&[2, 2]), &[(2, 2), (1, 2)], (-1, 2))),
            row("1", tw(F1, 1, 1, 1, 1), Yes, No, RowFib::Twisted),
        ],
        F1p if r == 2 && m == 1 => vec![
            row("1", tw(F1, 1, n, 1, 1), Yes, No, RowFib::Twisted),
            row("1'", tw(F1p, 1, n, 4, 1), No, No, RowFib::Twisted),
            row("34", sp(F34, 1, n), No, Yes, ex(s2(&[2, 2, n]), &[(1, 2), (2, 2), ((ni + 1) / 2, ni)], (-1, 2 * ni))),
        ],
        F1p if r == 2 => vec![
            row("1", tw(F1, m, n, 1, 1), Yes, No, RowFib::Twisted),
            row("1'", tw(F1p, m, n, 4, 1), No, No, RowFib::Twisted),
            row("11'", tw(F11p, m, n, 2, 1), No, Yes, RowFib::Twisted),
            row(
                "34",
                sp(F34, m, n),
                No,
                No,
                ex(s2(&[2, 2, n]), &[(mi, 2), (mi + 1, 2), (mi + ni, 2 * ni)], (-mi, 2 * ni)),
            ),
            row("34bis", sp(F34, m, n).bis(), No, No, ex(d2(&[n], &[]), &[((mi + ni) / 2, ni)], (-mi, 2 * ni))),
        ],
        F1p => {
            let s = p.s;
            vec![
                row("1'", tw(F1p, m, n, 2 * r, s), Computed, No, RowFib::Twisted),
                row("1", tw(F1, m, n, r / 2, s % (r / 2)), Computed, No, RowFib::Twisted),
                row("1'", tw(F1p, m, n, 2 * r, s + r), Computed, No, RowFib::Twisted),
                row("11'", tw(F11p, m, n, r, s), No, Yes, RowFib::Twisted),
            ]
        }
        F2 if m == 1 && !general => vec![
            row(
                "2",
                sp(F2, 2, n),
                No,
                Flag::when(n % 2 == 0),
                ex(s2(&[2, 2, n]), &[(2, 2), (2, 2), (2, ni)], (-2, ni)),
            ),
            row("2", sp(F2, 1, 2 * n), Yes, No, ex(s2(&[2, 2, 2 * n]), &[(1, 2), (1, 2), (1, 2 * ni)], (-1, 2 * ni))),
            row(
                "4",
                sp(F4, 1, n),
                No,
                Flag::when(n % 2 == 1),
                ex(s2(&[2, 2, 2 * n]), &[(1, 2), (2, 2), (ni + 1, 2 * ni)], (-1, 2 * ni)),
            ),
        ],
        F2 => {
            let ten = if n % 2 == 0 {
                ex(d2(&[], &[2, 2, n]), &[(mi, 2), (mi, 2), (mi, ni)], (-mi, 2 * ni))
            } else {
                ex(d2(&[2], &[n]), &[(mi, 2), (mi, ni)], (-mi, 2 * ni))
            };
            let thirteen = if n % 2 == 1 {
                ex(d2(&[], &[2, 2, n]), &[(mi, 2), (mi, 2), (mi, ni)], (-mi, 2 * ni))
            } else {
                ex(d2(&[2], &[n]), &[(mi, 2), (mi, ni)], (-mi, 2 * ni))
            };
            vec![
                row(
                    "2",
                    sp(F2, m, 2 * n),
                    Yes,
                    No,
                    ex(s2(&[2, 2, 2 * n]), &[(mi, 2), (mi, 2), (mi, 2 * ni)], (-mi, 2 * ni)),
                ),
                row("2", sp(F2, 2 * m, n), No, No, ex(s2(&[2, 2, n]), &[(2 * mi, 2), (2 * mi, 2), (2 * mi, ni)], (-2 * mi, ni))),
                row("10", sp(F10, m, n), No, Flag::when(n % 2 == 0), ten),
                row(
                    "4",
                    sp(F4, m, n),
                    No,
                    No,
                    ex(s2(&[2, 2, 2 * n]), &[(mi, 2), (mi + 1, 2), (mi + ni, 2 * ni)], (-mi, 2 * ni)),
                ),
                row("13bis", sp(F13, m, n).bis(), No, Flag::when(n % 2 == 1), thirteen),
            ]
        }
        F3 => vec![
            row(
                "3",
                sp(F3, m, 2 * n),
                No,
                No,
                ex(s2(&[2, 2, 2 * n]), &[(mi + 1, 2), (mi + 1, 2), (mi, 2 * ni)], (-mi, 2 * ni)),
            ),
            row("2", sp(F2, 2 * m, n), No, No, ex(s2(&[2, 2, n]), &[(2 * mi, 2), (2 * mi, 2), (2 * mi, ni)], (-2 * mi, ni))),
            row("13", sp(F13, m, n), No, No, ex(d2(&[2], &[n]), &[(mi + 1, 2), (mi, ni)], (-mi, 2 * ni))),
            row(
                "4",
                sp(F4, m, n),
                No,
                No,
                ex(s2(&[2, 2, 2 * n]), &[(mi, 2), (mi + 1, 2), (mi + ni, 2 * ni)], (-mi, 2 * ni)),
            ),
            // φ sends each cyclic part to a non-cyclic coset, so for n > 1 the group is of
            // Family 33 type; the printed Seifert data is the Family 11 formula at r = 2
            if n == 1 {
                row("11", tw(F11, m, 1, 2, 1), No, Yes, RowFib::Twisted)
            } else {
                row("33", sp(F33, m, n), No, Yes, RowFib::Explicit(fibration_family11(m, n, 2, 1, false)?))
            },
        ],
        F5 if m == 1 && !general => vec![
            row("5", sp(F5, 2, 1), No, No, ex(s2(&[2, 3, 3]), &[(2, 2), (2, 3), (2, 3)], (-1, 3))),
            row("7", sp(F7, 1, 1), Yes, No, ex(s2(&[2, 3, 4]), &[(1, 2), (1, 3), (1, 4)], (-1, 12))),
            row("8", sp(F8, 1, 1), No, Yes, ex(s2(&[2, 3, 4]), &[(2, 2), (1, 3), (3, 4)], (-1, 12))),
        ],
        F5 => vec![
            row("7", sp(F7, m, 1), Yes, No, ex(s2(&[2, 3, 4]), &[(mi, 2), (mi, 3), (mi, 4)], (-mi, 12))),
            row("5", sp(F5, 2 * m, 1), No, No, ex(s2(&[2, 3, 3]), &[(2 * mi, 2), (2 * mi, 3), (2 * mi, 3)], (-mi, 3))),
            row("14", sp(F14, m, 1), No, No, ex(d2(&[3], &[2]), &[(mi, 3), (mi, 2)], (-mi, 12))),
            row("8", sp(F8, m, 1), No, No, ex(s2(&[2, 3, 4]), &[(mi + 1, 2), (mi, 3), (mi + 2, 4)], (-mi, 12))),
            row("16", sp(F16, m, 1), No, Yes, ex(d2(&[], &[2, 3, 3]), &[(mi, 2), (mi, 3), (mi, 3)], (-mi, 12))),
        ],
        F6 => vec![
            row(
                "6",
                sp(F6, 2 * m, 1),
                No,
                No,
                ex(s2(&[2, 3, 3]), &[(2 * mi, 2), (2 * mi + 1, 3), (2 * mi + 2, 3)], (-mi, 3)),
            ),
            row("18", sp(F18, m, 1), No, Yes, ex(d2(&[], &[2, 3, 3]), &[(mi, 2), (mi + 1, 3), (mi + 2, 3)], (-mi, 12))),
        ],
        F7 if m == 1 && !general => vec![row("7", sp(F7, 2, 1), No, Yes, ex(s2(&[2, 3, 4]), &[(2, 2), (2, 3), (2, 4)], (-1, 6)))],
        F7 => vec![
            row("7", sp(F7, 2 * m, 1), No, No, ex(s2(&[2, 3, 4]), &[(2 * mi, 2), (2 * mi, 3), (2 * mi, 4)], (-mi, 6))),
            row("15", sp(F15, m, 1), No, Yes, ex(d2(&[], &[2, 3, 4]), &[(mi, 2), (mi, 3), (mi, 4)], (-mi, 24))),
        ],
        F9 if m == 1 && !general => vec![row("9", sp(F9, 2, 1), No, Yes, ex(s2(&[2, 3, 5]), &[(2, 2), (2, 3), (2, 5)], (-1, 15)))],
        F9 => vec![
            row("9", sp(F9, 2 * m, 1), No, No, ex(s2(&[2, 3, 5]), &[(2 * mi, 2), (2 * mi, 3), (2 * mi, 5)], (-mi, 15))),
            row("19", sp(F19, m, 1), No, Yes, ex(d2(&[], &[2, 3, 5]), &[(mi, 2), (mi, 3), (mi, 5)], (-mi, 60))),
        ],
        _ => return Err(Error::Structural(format!("{} is not a manifold group of the tables", parent))),
    };
    Ok(out)
}

/// Rows of the mirror-image parent with every extension mirrored back.
fn mirrored(p: &GroupSpec) -> Result<Vec<Row>> {
    let mut out = rows(&swap_spec(p))?;
    for r in &mut out {
        r.ext = swap_spec(&r.ext);
        if let RowFib::Explicit(f) = &mut r.fib {
            // exchanging the factors is conjugation by an orientation-reversing map
            f.local_invariants = f.local_invariants.iter().map(|x| mod_one(&-x)).collect();
            f.euler = -f.euler.clone();
        }
    }
    Ok(out)
}

pub(crate) fn odd_s(r: u64, s: u64) -> u64 {
    if r % 2 == 1 && s % 2 == 0 {
        r - s
    } else {
        s
    }
}

/// Twist as seen by group identification, or None when it carries no information.
pub fn twist_key(spec: &GroupSpec) -> Option<u64> {
    if spec.family.has_twist() && spec.r > 2 {
        Some(canonical_s(spec.s as i64, spec.r))
    } else {
        None
    }
}

pub fn find_row(parent: &GroupSpec, ext: &GroupSpec) -> Result<Row> {
    let want = ext.construct()?.kinds();
    for r in rows(parent)? {
        if r.ext.construct()?.kinds() == want && twist_key(&r.ext) == twist_key(ext) {
            return Ok(r);
        }
    }
    Err(Error::Structural(format!("no table row of {} has extension {}", parent, ext)))
}
