//! Semantics of the list extension: depth-truncated Kleene closures, the
//! constructor and recursor graphs, and the executable form of the
//! list-induction lemma.
//!
//! The untruncated closure is infinite, so every operation here works on the
//! fragment of lists up to a configured depth and fails loudly at the
//! boundary instead of wrapping around.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::eval::EvalError;
use crate::rng::Rng;
use crate::space::{Open, Space, SpaceError};
use crate::term::ListConst;
use crate::value::{cons_value, nil_value, Value};

/// All lists over `carrier` of length at most `depth`, in the tagged-pair
/// encoding.
pub fn kleene(
    carrier: &BTreeSet<Value>,
    depth: usize,
    cap: usize,
) -> Result<BTreeSet<Value>, EvalError> {
    let mut all: BTreeSet<Value> = BTreeSet::new();
    let mut frontier = alloc::vec![nil_value()];
    all.insert(nil_value());
    for _ in 0..depth {
        let mut next = Vec::new();
        for l in &frontier {
            for a in carrier {
                let c = cons_value(a.clone(), l.clone());
                if all.insert(c.clone()) {
                    next.push(c);
                }
            }
        }
        if all.len() > cap {
            return Err(EvalError::CarrierTooLarge {
                size: all.len(),
                cap,
            });
        }
        frontier = next;
    }
    Ok(all)
}

/// The curried constructor graph over `carrier`: heads map to graphs sending
/// each list of length below `depth` to the extended list. Lists already at
/// the maximal depth are outside the inner domains, so applying at the
/// boundary fails as an undefined application.
pub fn cons_graph(
    carrier: &BTreeSet<Value>,
    depth: usize,
    cap: usize,
) -> Result<Value, EvalError> {
    let inner_dom = kleene(carrier, depth.saturating_sub(1), cap)?;
    let mut outer = BTreeMap::new();
    for a in carrier {
        let mut inner = BTreeMap::new();
        for l in &inner_dom {
            inner.insert(l.clone(), cons_value(a.clone(), l.clone()));
        }
        outer.insert(a.clone(), Value::Graph(inner));
    }
    Ok(Value::Graph(outer))
}

/// The recursor graph `rec_{t, f}` over lists of length at most `depth`:
/// `rec(nil) = base` and `rec(cons a l) = step(a)(l)(rec(l))`.
///
/// `motive` assigns each list its carrier; `base` must land in
/// `motive(nil)` and `step` must be the curried dependent graph of the
/// recursion step. Shape mismatches surface as undefined lookups.
pub fn rec_graph(
    carrier: &BTreeSet<Value>,
    motive: &Value,
    base: &Value,
    step: &Value,
    depth: usize,
    cap: usize,
) -> Result<Value, EvalError> {
    let dom = kleene(carrier, depth, cap)?;
    let motive_graph = motive.as_graph().ok_or_else(|| EvalError::NotACarrier {
        what: String::from("recursor motive must be a graph"),
    })?;
    let nil_carrier = motive_graph
        .get(&nil_value())
        .and_then(|v| v.as_set())
        .ok_or_else(|| EvalError::Undefined {
            what: String::from("motive lacks a carrier at nil"),
        })?;
    if !nil_carrier.contains(base) {
        return Err(EvalError::Undefined {
            what: String::from("recursor base is outside the motive at nil"),
        });
    }
    let lookup = |f: &Value, a: &Value| -> Result<Value, EvalError> {
        f.as_graph()
            .and_then(|m| m.get(a))
            .cloned()
            .ok_or_else(|| EvalError::Undefined {
                what: String::from("recursor step has the wrong shape"),
            })
    };
    let mut table: BTreeMap<Value, Value> = BTreeMap::new();
    // lists sorted by depth so tails are always computed first
    let mut by_depth: Vec<Value> = dom.into_iter().collect();
    by_depth.sort_by_key(|l| crate::value::list_depth(l).unwrap_or(usize::MAX));
    for l in by_depth {
        let v = match crate::value::uncons(&l) {
            None => base.clone(),
            Some((hd, tl)) => {
                let rec_tl = table.get(tl).cloned().ok_or_else(|| EvalError::Undefined {
                    what: String::from("recursor tail missing"),
                })?;
                let s1 = lookup(step, hd)?;
                let s2 = lookup(&s1, tl)?;
                lookup(&s2, &rec_tl)?
            }
        };
        table.insert(l, v);
    }
    Ok(Value::Graph(table))
}

/// Bare interpretations of the list constants as graphs over the level-0
/// carriers. These materialize whole function spaces, so they are honest only
/// for small universes; term-level applications take the direct path in the
/// evaluator instead.
pub fn constant_value(
    c: ListConst,
    level0: &BTreeSet<Value>,
    depth: usize,
    cap: usize,
) -> Result<Value, EvalError> {
    match c {
        ListConst::List => {
            let mut g = BTreeMap::new();
            for s in level0 {
                let carrier = require_carrier(s)?;
                g.insert(s.clone(), Value::Set(kleene(&carrier, depth, cap)?));
            }
            Ok(Value::Graph(g))
        }
        ListConst::Nil => {
            let mut g = BTreeMap::new();
            for s in level0 {
                g.insert(s.clone(), nil_value());
            }
            Ok(Value::Graph(g))
        }
        ListConst::Cons => {
            let mut g = BTreeMap::new();
            for s in level0 {
                let carrier = require_carrier(s)?;
                g.insert(s.clone(), cons_graph(&carrier, depth, cap)?);
            }
            Ok(Value::Graph(g))
        }
        ListConst::ListRec => {
            let mut g = BTreeMap::new();
            for s in level0 {
                let carrier = require_carrier(s)?;
                g.insert(s.clone(), rec_family(&carrier, level0, depth, cap)?);
            }
            Ok(Value::Graph(g))
        }
        ListConst::ListInd => Err(EvalError::NotACarrier {
            what: String::from("list_ind is a proof constant; it has no graph"),
        }),
    }
}

fn require_carrier(v: &Value) -> Result<BTreeSet<Value>, EvalError> {
    v.as_set().cloned().ok_or_else(|| EvalError::NotACarrier {
        what: String::from("universe member is not a set"),
    })
}

/// All dependent graphs over `dom` with fibers given by `fiber`.
fn all_graphs(
    dom: &[Value],
    fiber: impl Fn(&Value) -> Result<Vec<Value>, EvalError>,
    cap: usize,
) -> Result<Vec<Value>, EvalError> {
    let mut acc: Vec<Vec<(Value, Value)>> = alloc::vec![Vec::new()];
    for d in dom {
        let choices = fiber(d)?;
        let mut next = Vec::new();
        for partial in &acc {
            for w in &choices {
                let mut ext = partial.clone();
                ext.push((d.clone(), w.clone()));
                next.push(ext);
            }
        }
        if next.len() > cap {
            return Err(EvalError::CarrierTooLarge {
                size: next.len(),
                cap,
            });
        }
        acc = next;
    }
    Ok(acc.into_iter().map(Value::graph).collect())
}

/// The nested graph `(T, (t, (f, rec)))` family for one carrier, following
/// the set-level recursor construction.
fn rec_family(
    carrier: &BTreeSet<Value>,
    level0: &BTreeSet<Value>,
    depth: usize,
    cap: usize,
) -> Result<Value, EvalError> {
    let dom: Vec<Value> = kleene(carrier, depth, cap)?.into_iter().collect();
    let shallow: Vec<Value> = kleene(carrier, depth.saturating_sub(1), cap)?
        .into_iter()
        .collect();
    let u0: Vec<Value> = level0.iter().cloned().collect();
    let motives = all_graphs(&dom, |_| Ok(u0.clone()), cap)?;
    let mut by_motive = BTreeMap::new();
    for motive in motives {
        let mg = motive.as_graph().unwrap();
        let carrier_at = |l: &Value| -> Result<Vec<Value>, EvalError> {
            mg.get(l)
                .and_then(|v| v.as_set())
                .map(|s| s.iter().cloned().collect())
                .ok_or_else(|| EvalError::Undefined {
                    what: String::from("motive fiber missing"),
                })
        };
        let bases = carrier_at(&nil_value())?;
        // step space: for each head and each shallow list, functions from
        // T(l) to T(cons head l)
        let heads: Vec<Value> = carrier.iter().cloned().collect();
        let steps = all_graphs(
            &heads,
            |a| {
                let inner = all_graphs(
                    &shallow,
                    |l| {
                        let from = carrier_at(l)?;
                        let to = carrier_at(&cons_value(a.clone(), l.clone()))?;
                        all_graphs(&from, |_| Ok(to.clone()), cap)
                    },
                    cap,
                )?;
                Ok(inner)
            },
            cap,
        )?;
        let mut by_base = BTreeMap::new();
        for base in &bases {
            let mut by_step = BTreeMap::new();
            for step in &steps {
                let rec = rec_graph(carrier, &motive, base, step, depth, cap)?;
                by_step.insert(step.clone(), rec);
            }
            by_base.insert(base.clone(), Value::Graph(by_step));
        }
        by_motive.insert(motive.clone(), Value::Graph(by_base));
    }
    Ok(Value::Graph(by_motive))
}

// ---------------------------------------------------------------------------
// The list-induction lemma, in truncated exponential form.
// ---------------------------------------------------------------------------

/// A predicate table: every list of the truncated closure mapped to an open.
pub type PsiTable = BTreeMap<Value, Open>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListIndReport {
    /// The induction invariant: `big_meet(T_n) <= psi(l)` for every `l`.
    pub invariant_holds: bool,
    /// `exp(big_meet over psi, big_meet(T_n)) = X`.
    pub exponent_is_top: bool,
    pub failures: Vec<String>,
}

impl ListIndReport {
    pub fn ok(&self) -> bool {
        self.invariant_holds && self.exponent_is_top
    }
}

/// Builds the level sets `T_0 = {psi(nil)}`,
/// `T_{k+1} = T_k + {psi(cons a l) ^ psi(l)}` and checks both halves of the
/// lemma at truncation depth `n`.
pub fn check_list_ind_lemma(
    space: &Space,
    carrier: &BTreeSet<Value>,
    psi: &PsiTable,
    n: usize,
    cap: usize,
) -> Result<ListIndReport, EvalError> {
    let lists = kleene(carrier, n, cap)?;
    let psi_at = |l: &Value| -> Result<Open, EvalError> {
        psi.get(l).copied().ok_or_else(|| EvalError::Undefined {
            what: String::from("psi table is not total on the closure"),
        })
    };
    let mut levels: Vec<BTreeSet<Open>> = Vec::new();
    let mut t_cur: BTreeSet<Open> = BTreeSet::new();
    t_cur.insert(psi_at(&nil_value())?);
    levels.push(t_cur.clone());
    let mut frontier = alloc::vec![nil_value()];
    for _ in 0..n {
        let mut next_frontier = Vec::new();
        for l in &frontier {
            for a in carrier {
                let c = cons_value(a.clone(), l.clone());
                let e = space
                    .exp(psi_at(&c)?, psi_at(l)?)
                    .map_err(EvalError::Space)?;
                t_cur.insert(e);
                next_frontier.push(c);
            }
        }
        levels.push(t_cur.clone());
        frontier = next_frontier;
    }
    let meet_t = space
        .big_meet(t_cur.iter().copied())
        .map_err(EvalError::Space)?;
    let mut failures = Vec::new();
    let mut invariant_holds = true;
    for l in &lists {
        let p = psi_at(l)?;
        if !space.leq(meet_t, p).map_err(EvalError::Space)? {
            invariant_holds = false;
            failures.push(format!(
                "meet of the step family is not below psi at depth {}",
                crate::value::list_depth(l).unwrap_or(0)
            ));
        }
    }
    let mut meet_psi = space.whole();
    for l in &lists {
        meet_psi = space.meet(meet_psi, psi_at(l)?).map_err(EvalError::Space)?;
    }
    let expo = space.exp(meet_psi, meet_t).map_err(EvalError::Space)?;
    let exponent_is_top = expo == space.whole();
    if !exponent_is_top {
        failures.push(format!(
            "exponent evaluates to open {:?} instead of the whole space",
            space.open_index(expo)
        ));
    }
    Ok(ListIndReport {
        invariant_holds,
        exponent_is_top,
        failures,
    })
}

/// Truncation monotonicity: the meet of the level-(k+1) family is below the
/// meet of the level-k family. Exposed for the property suite.
pub fn level_meets(
    space: &Space,
    carrier: &BTreeSet<Value>,
    psi: &PsiTable,
    n: usize,
) -> Result<Vec<Open>, SpaceError> {
    let mut out = Vec::new();
    let mut family: BTreeSet<Open> = BTreeSet::new();
    family.insert(*psi.get(&nil_value()).expect("psi total"));
    out.push(space.big_meet(family.iter().copied())?);
    let mut frontier = alloc::vec![nil_value()];
    for _ in 0..n {
        let mut next = Vec::new();
        for l in &frontier {
            for a in carrier {
                let c = cons_value(a.clone(), l.clone());
                let e = space.exp(psi[&c], psi[l])?;
                family.insert(e);
                next.push(c);
            }
        }
        out.push(space.big_meet(family.iter().copied())?);
        frontier = next;
    }
    Ok(out)
}

/// Enumerates every psi table when there are at most `limit` of them,
/// otherwise draws `samples` tables with the seeded generator.
pub fn psi_tables(
    space: &Space,
    carrier: &BTreeSet<Value>,
    n: usize,
    cap: usize,
    limit: u64,
    samples: usize,
    seed: u64,
) -> Result<Vec<PsiTable>, EvalError> {
    let lists: Vec<Value> = kleene(carrier, n, cap)?.into_iter().collect();
    let opens: Vec<Open> = space.opens().iter().map(|&m| Open(m)).collect();
    let total = (opens.len() as u64).checked_pow(lists.len() as u32);
    if let Some(t) = total {
        if t <= limit {
            let mut out = Vec::new();
            let mut idx = alloc::vec![0usize; lists.len()];
            loop {
                out.push(
                    lists
                        .iter()
                        .cloned()
                        .zip(idx.iter().map(|&i| opens[i]))
                        .collect(),
                );
                let mut k = 0;
                loop {
                    if k == lists.len() {
                        return Ok(out);
                    }
                    idx[k] += 1;
                    if idx[k] < opens.len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
            }
        }
    }
    let mut rng = Rng::new(seed);
    Ok((0..samples)
        .map(|_| {
            lists
                .iter()
                .cloned()
                .map(|l| (l, opens[rng.below(opens.len())]))
                .collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::list_depth;

    fn singleton_carrier() -> BTreeSet<Value> {
        [Value::set([])].into_iter().collect()
    }

    fn two_carrier() -> BTreeSet<Value> {
        [Value::set([]), Value::set([Value::set([])])]
            .into_iter()
            .collect()
    }

    #[test]
    fn kleene_counts_match_the_geometric_sum() {
        let empty: BTreeSet<Value> = BTreeSet::new();
        assert_eq!(kleene(&empty, 3, 64).unwrap().len(), 1);
        assert_eq!(kleene(&singleton_carrier(), 2, 64).unwrap().len(), 3);
        // sum of |S|^k for k <= n
        for n in 0..=3 {
            let expect: usize = (0..=n).map(|k| 2usize.pow(k as u32)).sum();
            assert_eq!(kleene(&two_carrier(), n, 64).unwrap().len(), expect);
        }
        assert!(matches!(
            kleene(&two_carrier(), 8, 64),
            Err(EvalError::CarrierTooLarge { .. })
        ));
    }

    #[test]
    fn cons_graph_cardinality_and_boundary() {
        let carrier = two_carrier();
        let g = cons_graph(&carrier, 2, 64).unwrap();
        let outer = g.as_graph().unwrap();
        assert_eq!(outer.len(), 2);
        let total: usize = outer
            .values()
            .map(|inner| inner.as_graph().unwrap().len())
            .sum();
        // |S| * |closure at depth-1|
        assert_eq!(total, 2 * 3);
        // applying to a list at the maximal depth is outside the domain
        let a = Value::set([]);
        let max_list = cons_value(a.clone(), cons_value(a.clone(), nil_value()));
        assert_eq!(list_depth(&max_list), Some(2));
        let inner = outer[&a].as_graph().unwrap();
        assert!(!inner.contains_key(&max_list));
    }

    #[test]
    fn recursor_computes_length() {
        // length: motive is a constant 4-element carrier of von Neumann
        // numerals, base 0, step (a, l, r) -> r + 1
        let carrier = singleton_carrier();
        let mut nums = Vec::new();
        let mut cur = Value::set([]);
        for _ in 0..4 {
            nums.push(cur.clone());
            let mut next: BTreeSet<Value> = cur.as_set().unwrap().clone();
            next.insert(cur.clone());
            cur = Value::Set(next);
        }
        let num_set = Value::set(nums.clone());
        let depth = 3;
        let dom = kleene(&carrier, depth, 64).unwrap();
        let motive = Value::graph(dom.iter().map(|l| (l.clone(), num_set.clone())));
        let succ = |v: &Value| -> Value {
            let i = nums.iter().position(|n| n == v).unwrap();
            nums[i + 1].clone()
        };
        let shallow = kleene(&carrier, depth - 1, 64).unwrap();
        let step = Value::graph(carrier.iter().map(|a| {
            (
                a.clone(),
                Value::graph(shallow.iter().map(|l| {
                    (
                        l.clone(),
                        Value::graph(nums[..3].iter().map(|r| (r.clone(), succ(r)))),
                    )
                })),
            )
        }));
        let rec = rec_graph(&carrier, &motive, &nums[0], &step, depth, 64).unwrap();
        let table = rec.as_graph().unwrap();
        for l in &dom {
            let d = list_depth(l).unwrap();
            assert_eq!(table[l], nums[d], "length of a depth-{} list", d);
        }
    }

    #[test]
    fn constant_graphs_over_a_small_universe() {
        let level0: BTreeSet<Value> = two_carrier();
        let list_g = constant_value(ListConst::List, &level0, 2, 64).unwrap();
        let g = list_g.as_graph().unwrap();
        assert_eq!(g.len(), 2);
        let nil_g = constant_value(ListConst::Nil, &level0, 2, 64).unwrap();
        for v in nil_g.as_graph().unwrap().values() {
            assert_eq!(v, &nil_value());
        }
        // the recursor family materializes for this tiny universe
        let rec = constant_value(ListConst::ListRec, &level0, 1, 512).unwrap();
        assert!(rec.as_graph().is_some());
    }

    #[test]
    fn list_ind_lemma_exhaustive_on_sierpinski() {
        let space = Space::sierpinski();
        let carrier = singleton_carrier();
        let tables = psi_tables(&space, &carrier, 2, 64, 100_000, 0, 0).unwrap();
        assert_eq!(tables.len(), 27); // |opens|^|closure| = 3^3
        for psi in &tables {
            let r = check_list_ind_lemma(&space, &carrier, psi, 2, 64).unwrap();
            assert!(r.ok(), "failures: {:?}", r.failures);
        }
    }

    #[test]
    fn list_ind_lemma_sampled_on_the_diamond() {
        let space = Space::diamond();
        let carrier = two_carrier();
        let tables = psi_tables(&space, &carrier, 2, 64, 100_000, 200, 0).unwrap();
        assert_eq!(tables.len(), 200); // 6^7 tables is over the limit
        for psi in &tables {
            let r = check_list_ind_lemma(&space, &carrier, psi, 2, 64).unwrap();
            assert!(r.ok(), "failures: {:?}", r.failures);
        }
    }

    #[test]
    fn level_meets_are_monotone() {
        let space = Space::diamond();
        let carrier = singleton_carrier();
        let tables = psi_tables(&space, &carrier, 3, 64, 100_000, 50, 1).unwrap();
        for psi in tables.iter().take(60) {
            let meets = level_meets(&space, &carrier, psi, 3).unwrap();
            for w in meets.windows(2) {
                assert!(space.leq(w[1], w[0]).unwrap());
            }
        }
    }

    use crate::space::Space;
}
