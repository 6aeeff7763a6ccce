//! Deterministic generators for well-typed terms and redex pairs, plus an
//! all-orders reduction explorer. Test support shared by the unit suites,
//! the property suites and the acceptance sweeps.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::rng::Rng;
use crate::term::{self, Context, Hint, Term};
use crate::typing::{self, Limits};

/// A context with two propositional variables and proofs of both:
/// `P : Prop; Q : Prop; p : P; q : Q`.
pub fn standard_context() -> Context {
    let mut ctx = Context::empty();
    ctx.push("P", term::prop());
    ctx.push("Q", term::prop());
    ctx.push("p", term::var(1));
    ctx.push("q", term::var(1));
    ctx
}

/// How the generator scope sees each variable.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Proposition,
    Proof,
}

pub struct TermGen {
    rng: Rng,
}

impl TermGen {
    pub fn new(seed: u64) -> Self {
        TermGen { rng: Rng::new(seed) }
    }

    /// Scope-correct but otherwise arbitrary terms; used for parser and
    /// substitution round trips, not for typed pipelines.
    pub fn raw_term(&mut self, ctx_len: usize, depth: usize) -> Term {
        self.raw_at(ctx_len, depth)
    }

    fn raw_at(&mut self, scope: usize, depth: usize) -> Term {
        let leaf = depth == 0;
        let pick = self.rng.below(if leaf { 3 } else { 7 });
        match pick {
            0 => term::prop(),
            1 => term::type_(self.rng.below(3) as u32),
            2 if scope > 0 => {
                let i = self.rng.below(scope);
                Term::Var(i, self.name_hint(i))
            }
            2 => term::falsum(),
            3 => term::app(
                self.raw_at(scope, depth - 1),
                self.raw_at(scope, depth - 1),
            ),
            4 => term::lam(
                self.raw_at(scope, depth - 1),
                self.raw_at(scope + 1, depth - 1),
                self.binder_hint(),
            ),
            5 => term::pi(
                self.raw_at(scope, depth - 1),
                self.raw_at(scope + 1, depth - 1),
                self.binder_hint(),
            ),
            _ => Term::Const(match self.rng.below(5) {
                0 => term::ListConst::List,
                1 => term::ListConst::Nil,
                2 => term::ListConst::Cons,
                3 => term::ListConst::ListRec,
                _ => term::ListConst::ListInd,
            }),
        }
    }

    fn name_hint(&mut self, i: usize) -> Hint {
        // occasionally hintless or deliberately clashing
        match self.rng.below(4) {
            0 => Hint::none(),
            1 => Hint::named("x"),
            _ => Hint::named(&alloc::format!("v{}", i)),
        }
    }

    fn binder_hint(&mut self) -> Hint {
        match self.rng.below(3) {
            0 => Hint::none(),
            1 => Hint::named("x"),
            _ => Hint::named("y"),
        }
    }

    /// A proposition over the standard context extended by `extra`
    /// propositional binders, built only from Prop-sorted formers.
    fn proposition(&mut self, kinds: &[Kind], depth: usize) -> Term {
        let props: Vec<usize> = kinds
            .iter()
            .rev()
            .enumerate()
            .filter(|(_, k)| **k == Kind::Proposition)
            .map(|(i, _)| i)
            .collect();
        if depth == 0 || self.rng.chance(1, 4) {
            return match self.rng.below(3) {
                0 if !props.is_empty() => term::var(props[self.rng.below(props.len())]),
                1 => term::falsum(),
                _ if !props.is_empty() => term::var(props[self.rng.below(props.len())]),
                _ => term::falsum(),
            };
        }
        match self.rng.below(6) {
            0 => term::and(
                self.proposition(kinds, depth - 1),
                self.proposition(kinds, depth - 1),
            ),
            1 => term::or(
                self.proposition(kinds, depth - 1),
                self.proposition(kinds, depth - 1),
            ),
            2 => term::arrow(
                self.proposition(kinds, depth - 1),
                self.proposition(kinds, depth - 1),
            ),
            3 => term::neg(self.proposition(kinds, depth - 1)),
            4 => {
                let mut inner = kinds.to_vec();
                inner.push(Kind::Proposition);
                term::pi(
                    term::prop(),
                    self.proposition(&inner, depth - 1),
                    Hint::named("R"),
                )
            }
            _ => {
                // a beta redex inside a proposition
                let mut inner = kinds.to_vec();
                inner.push(Kind::Proposition);
                term::app(
                    term::lam(
                        term::prop(),
                        self.proposition(&inner, depth - 1),
                        Hint::named("S"),
                    ),
                    self.proposition(kinds, depth - 1),
                )
            }
        }
    }

    /// A well-typed redex and its one-step contraction, over the standard
    /// context. The pair is checked with the kernel before being returned.
    pub fn redex_pair(&mut self, lim: &Limits) -> (Context, Term, Term) {
        let ctx = standard_context();
        let kinds = [Kind::Proposition, Kind::Proposition, Kind::Proof, Kind::Proof];
        loop {
            let choice = self.rng.below(3);
            let (fun, arg) = match choice {
                // (fun (X : Prop) => B) C with B, C propositions
                0 => {
                    let mut inner = kinds.to_vec();
                    inner.push(Kind::Proposition);
                    let body = self.proposition(&inner, 2);
                    let arg = self.proposition(&kinds, 2);
                    (term::lam(term::prop(), body, Hint::named("X")), arg)
                }
                // (fun (x : P) => B) p with B a proposition ignoring x
                1 => {
                    let slot = self.rng.below(2); // P or Q
                    let (pvar, proof) = if slot == 0 {
                        (term::var(3), term::var(1))
                    } else {
                        (term::var(2), term::var(0))
                    };
                    let mut inner = kinds.to_vec();
                    inner.push(Kind::Proof);
                    let body = self.proposition(&inner, 2);
                    (term::lam(pvar, body, Hint::named("h")), proof)
                }
                // (fun (x : P) => x) p: a proof-valued redex
                _ => {
                    let slot = self.rng.below(2);
                    let (pvar, proof) = if slot == 0 {
                        (term::var(3), term::var(1))
                    } else {
                        (term::var(2), term::var(0))
                    };
                    let body = if self.rng.chance(1, 2) {
                        term::var(0)
                    } else {
                        // the proof from the outer context, shifted under x
                        term::shift(&proof, 1)
                    };
                    (term::lam(pvar, body, Hint::named("h")), proof)
                }
            };
            let redex = term::app(fun.clone(), arg.clone());
            let contracted = match fun {
                Term::Lam(_, body, _) => term::subst(&body, 0, &arg),
                _ => unreachable!(),
            };
            // wrap both sides in the same propositional frame half the time
            let (redex, contracted) = if choice != 2 && self.rng.chance(1, 2) {
                let frame = self.proposition(&kinds, 1);
                (
                    term::and(redex, frame.clone()),
                    term::and(contracted, frame),
                )
            } else {
                (redex, contracted)
            };
            let mut cw = ctx.clone();
            let ok = typing::infer(lim, &mut cw, &redex).is_ok()
                && typing::infer(lim, &mut cw, &contracted).is_ok();
            if ok {
                return (ctx, redex, contracted);
            }
        }
    }

    /// A well-typed term over the standard context with at most `max_redexes`
    /// redexes, for the reduction-order sweeps.
    pub fn small_typed_term(&mut self, lim: &Limits, max_redexes: usize) -> (Context, Term) {
        let ctx = standard_context();
        let kinds = [Kind::Proposition, Kind::Proposition, Kind::Proof, Kind::Proof];
        loop {
            let t = self.proposition(&kinds, 3);
            if redex_positions(&t).len() > max_redexes {
                continue;
            }
            let mut cw = ctx.clone();
            if typing::infer(lim, &mut cw, &t).is_ok() {
                return (ctx, t);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Reduction-order exploration.
// ---------------------------------------------------------------------------

/// Paths to every contractible position: 0 descends into the function,
/// domain or annotation, 1 into the argument, body or codomain.
pub fn redex_positions(t: &Term) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    fn walk(t: &Term, path: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if contract_here(t).is_some() {
            out.push(path.clone());
        }
        match t {
            Term::App(f, a) => {
                path.push(0);
                walk(f, path, out);
                path.pop();
                path.push(1);
                walk(a, path, out);
                path.pop();
            }
            Term::Lam(x, b, _) | Term::Pi(x, b, _) => {
                path.push(0);
                walk(x, path, out);
                path.pop();
                path.push(1);
                walk(b, path, out);
                path.pop();
            }
            _ => {}
        }
    }
    let mut path = Vec::new();
    walk(t, &mut path, &mut out);
    out
}

/// Contracts the top of `t` if it is a beta or recursor redex.
fn contract_here(t: &Term) -> Option<Term> {
    if let Term::App(f, a) = t {
        if let Term::Lam(_, body, _) = f.as_ref() {
            return Some(term::subst(body, 0, a));
        }
    }
    let (head, args) = t.spine();
    if let Term::Const(c @ (term::ListConst::ListRec | term::ListConst::ListInd)) = head {
        if args.len() == 5 {
            let (shead, sargs) = args[4].spine();
            match shead {
                Term::Const(term::ListConst::Nil) if sargs.len() == 1 => {
                    return Some(args[2].clone());
                }
                Term::Const(term::ListConst::Cons) if sargs.len() == 3 => {
                    let rec_tail = term::apps(
                        Term::Const(*c),
                        [
                            args[0].clone(),
                            args[1].clone(),
                            args[2].clone(),
                            args[3].clone(),
                            sargs[2].clone(),
                        ],
                    );
                    return Some(term::apps(
                        args[3].clone(),
                        [sargs[1].clone(), sargs[2].clone(), rec_tail],
                    ));
                }
                _ => {}
            }
        }
    }
    None
}

/// One-step contraction at a path from `redex_positions`.
pub fn contract_at(t: &Term, path: &[u8]) -> Option<Term> {
    if path.is_empty() {
        return contract_here(t);
    }
    match t {
        Term::App(f, a) => {
            if path[0] == 0 {
                Some(term::app(contract_at(f, &path[1..])?, (**a).clone()))
            } else {
                Some(term::app((**f).clone(), contract_at(a, &path[1..])?))
            }
        }
        Term::Lam(x, b, h) => {
            if path[0] == 0 {
                Some(term::lam(contract_at(x, &path[1..])?, (**b).clone(), h.clone()))
            } else {
                Some(term::lam((**x).clone(), contract_at(b, &path[1..])?, h.clone()))
            }
        }
        Term::Pi(x, b, h) => {
            if path[0] == 0 {
                Some(term::pi(contract_at(x, &path[1..])?, (**b).clone(), h.clone()))
            } else {
                Some(term::pi((**x).clone(), contract_at(b, &path[1..])?, h.clone()))
            }
        }
        _ => None,
    }
}

/// Explores every reduction order from `t` (bounded by `limit` visited
/// terms) and returns the set of normal forms reached.
pub fn normal_forms_all_orders(t: &Term, limit: usize) -> Option<Vec<Term>> {
    let mut seen: Vec<Term> = Vec::new();
    let mut queue: Vec<Term> = alloc::vec![t.clone()];
    let mut normals: Vec<Term> = Vec::new();
    while let Some(cur) = queue.pop() {
        if seen.contains(&cur) {
            continue;
        }
        if seen.len() >= limit {
            return None;
        }
        seen.push(cur.clone());
        let positions = redex_positions(&cur);
        if positions.is_empty() {
            if !normals.contains(&cur) {
                normals.push(cur);
            }
            continue;
        }
        for p in positions {
            if let Some(next) = contract_at(&cur, &p) {
                queue.push(next);
            }
        }
    }
    Some(normals)
}

/// Named-variable mirror of the term language with naive capture-avoiding
/// substitution: the independent oracle for the de Bruijn implementation.
pub mod named {
    use super::*;

    #[derive(Clone, Debug, PartialEq, Eq)]
    pub enum NTerm {
        Var(String),
        App(alloc::boxed::Box<NTerm>, alloc::boxed::Box<NTerm>),
        Lam(String, alloc::boxed::Box<NTerm>, alloc::boxed::Box<NTerm>),
        Pi(String, alloc::boxed::Box<NTerm>, alloc::boxed::Box<NTerm>),
        Sort(crate::term::Sort),
        Const(crate::term::ListConst),
    }

    fn fresh(base: &str, avoid: &[String]) -> String {
        if !avoid.iter().any(|s| s == base) {
            return base.to_string();
        }
        let mut i = 0usize;
        loop {
            let cand = alloc::format!("{}#{}", base, i);
            if !avoid.iter().any(|s| s == &cand) {
                return cand;
            }
            i += 1;
        }
    }

    pub fn from_debruijn(t: &Term, scope: &[String]) -> NTerm {
        match t {
            Term::Var(i, _) => {
                let pos = scope.len() - 1 - i;
                NTerm::Var(scope[pos].clone())
            }
            Term::App(f, a) => NTerm::App(
                from_debruijn(f, scope).into(),
                from_debruijn(a, scope).into(),
            ),
            Term::Lam(a, b, _) => {
                let name = fresh(&alloc::format!("b{}", scope.len()), scope);
                let mut inner = scope.to_vec();
                inner.push(name.clone());
                NTerm::Lam(
                    name,
                    from_debruijn(a, scope).into(),
                    from_debruijn(b, &inner).into(),
                )
            }
            Term::Pi(a, b, _) => {
                let name = fresh(&alloc::format!("b{}", scope.len()), scope);
                let mut inner = scope.to_vec();
                inner.push(name.clone());
                NTerm::Pi(
                    name,
                    from_debruijn(a, scope).into(),
                    from_debruijn(b, &inner).into(),
                )
            }
            Term::Sort(s) => NTerm::Sort(*s),
            Term::Const(c) => NTerm::Const(*c),
        }
    }

    pub fn free_vars(t: &NTerm) -> Vec<String> {
        match t {
            NTerm::Var(x) => alloc::vec![x.clone()],
            NTerm::App(f, a) => {
                let mut v = free_vars(f);
                v.extend(free_vars(a));
                v
            }
            NTerm::Lam(x, a, b) | NTerm::Pi(x, a, b) => {
                let mut v = free_vars(a);
                v.extend(free_vars(b).into_iter().filter(|y| y != x));
                v
            }
            _ => Vec::new(),
        }
    }

    /// Textbook capture-avoiding substitution with on-demand renaming.
    pub fn subst(t: &NTerm, x: &str, v: &NTerm) -> NTerm {
        match t {
            NTerm::Var(y) => {
                if y == x {
                    v.clone()
                } else {
                    t.clone()
                }
            }
            NTerm::App(f, a) => NTerm::App(subst(f, x, v).into(), subst(a, x, v).into()),
            NTerm::Lam(y, a, b) | NTerm::Pi(y, a, b) => {
                let is_lam = matches!(t, NTerm::Lam(..));
                let a2 = subst(a, x, v);
                let (y2, b2) = if y == x {
                    (y.clone(), (**b).clone())
                } else {
                    let fv = free_vars(v);
                    if fv.iter().any(|f| f == y) {
                        let mut avoid = fv;
                        avoid.extend(free_vars(b));
                        avoid.push(x.to_string());
                        let fresh_name = fresh(y, &avoid);
                        let renamed = subst(b, y, &NTerm::Var(fresh_name.clone()));
                        (fresh_name, subst(&renamed, x, v))
                    } else {
                        (y.clone(), subst(b, x, v))
                    }
                };
                if is_lam {
                    NTerm::Lam(y2, a2.into(), b2.into())
                } else {
                    NTerm::Pi(y2, a2.into(), b2.into())
                }
            }
            _ => t.clone(),
        }
    }

    /// Alpha-comparison by conversion back through a canonical scope.
    pub fn alpha_eq(a: &NTerm, b: &NTerm) -> bool {
        fn canon(t: &NTerm, scope: &mut Vec<String>) -> Term {
            match t {
                NTerm::Var(x) => {
                    let pos = scope.iter().rposition(|s| s == x).expect("bound");
                    Term::Var(scope.len() - 1 - pos, Hint::none())
                }
                NTerm::App(f, a) => term::app(canon(f, scope), canon(a, scope)),
                NTerm::Lam(x, a, b) => {
                    let av = canon(a, scope);
                    scope.push(x.clone());
                    let bv = canon(b, scope);
                    scope.pop();
                    term::lam(av, bv, Hint::none())
                }
                NTerm::Pi(x, a, b) => {
                    let av = canon(a, scope);
                    scope.push(x.clone());
                    let bv = canon(b, scope);
                    scope.pop();
                    term::pi(av, bv, Hint::none())
                }
                NTerm::Sort(s) => Term::Sort(*s),
                NTerm::Const(c) => Term::Const(*c),
            }
        }
        let mut sa: Vec<String> = free_vars(a);
        sa.extend(free_vars(b));
        sa.sort();
        sa.dedup();
        let mut sb = sa.clone();
        canon(a, &mut sa) == canon(b, &mut sb)
    }
}
