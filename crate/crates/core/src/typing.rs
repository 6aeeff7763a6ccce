//! Decidable type checking: inference of minimal beta-normal types, checking
//! with restricted cumulativity, and the classification predicates the
//! semantics depends on (proof terms, propositional terms, product classes).

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::parse::parse_closed;
use crate::print::print_term;
use crate::reduce::{self, normalize, whnf};
use crate::term::{shift, subst, Context, ListConst, Sort, Term};

#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub fuel: u64,
    pub max_level: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            fuel: reduce::DEFAULT_FUEL,
            max_level: 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeError {
    /// Rule or check that failed, e.g. "apply", "conversion", "pi-sort".
    pub rule: &'static str,
    pub expected: String,
    pub actual: String,
    pub location: String,
}

impl core::fmt::Display for TypeError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "[{}] at {}", self.rule, self.location)?;
        if !self.expected.is_empty() || !self.actual.is_empty() {
            write!(f, ": expected {}, got {}", self.expected, self.actual)?;
        }
        Ok(())
    }
}

fn err(rule: &'static str, expected: impl Into<String>, actual: impl Into<String>, at: impl Into<String>) -> TypeError {
    TypeError {
        rule,
        expected: expected.into(),
        actual: actual.into(),
        location: at.into(),
    }
}

/// The four product classes of the PD function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProdClass {
    PP,
    TP,
    PT,
    TT,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JudgmentClass {
    Proof,
    Propositional,
    Other,
}

fn pp(ctx: &Context, t: &Term) -> String {
    print_term(t, &ctx.names())
}

fn norm(lim: &Limits, ctx: &Context, t: &Term, at: &Term) -> Result<Term, TypeError> {
    let mut fuel = lim.fuel;
    normalize(t, &mut fuel).map_err(|_| err("fuel", "", "", pp(ctx, at)))
}

/// Fixed signatures for the list constants, typed in the empty context.
pub fn list_const_type(c: ListConst) -> Term {
    let src = match c {
        ListConst::List => "Type0 -> Type0",
        ListConst::Nil => "forall A : Type0, list A",
        ListConst::Cons => "forall A : Type0, A -> list A -> list A",
        ListConst::ListRec => {
            "forall A : Type0, forall F : (list A -> Type0), \
             F (nil A) -> \
             (forall a : A, forall l : list A, F l -> F (cons A a l)) -> \
             forall l : list A, F l"
        }
        ListConst::ListInd => {
            "forall A : Type0, forall P : (list A -> Prop), \
             P (nil A) -> \
             (forall a : A, forall l : list A, P l -> P (cons A a l)) -> \
             forall l : list A, P l"
        }
    };
    parse_closed(src).expect("list constant signature parses")
}

fn sort_for_pi(s1: Sort, s2: Sort) -> Sort {
    match (s1, s2) {
        (_, Sort::Prop) => Sort::Prop,
        (Sort::Prop, Sort::Type(j)) => Sort::Type(j),
        (Sort::Type(i), Sort::Type(j)) => Sort::Type(i.max(j)),
    }
}

fn as_sort(lim: &Limits, ctx: &Context, ty: &Term, at: &Term) -> Result<Sort, TypeError> {
    let mut fuel = lim.fuel;
    let w = whnf(ty, &mut fuel).map_err(|_| err("fuel", "", "", pp(ctx, at)))?;
    match w {
        Term::Sort(s) => Ok(s),
        other => Err(err("sort", "a sort", pp(ctx, &other), pp(ctx, at))),
    }
}

/// Infers the minimal beta-normal type of `t` under `ctx`.
pub fn infer(lim: &Limits, ctx: &mut Context, t: &Term) -> Result<Term, TypeError> {
    match t {
        Term::Var(k, _) => {
            let slot = ctx
                .slot_of_index(*k)
                .ok_or_else(|| err("variable", format!("index < {}", ctx.len()), format!("{}", k), pp(ctx, t)))?;
            let ty = ctx.entry(slot).unwrap().1.clone();
            let lifted = shift(&ty, k + 1);
            norm(lim, ctx, &lifted, t)
        }
        Term::Sort(Sort::Prop) => Ok(Term::Sort(Sort::Type(0))),
        Term::Sort(Sort::Type(i)) => {
            if i + 1 > lim.max_level {
                Err(err(
                    "axiom-type",
                    format!("level <= {}", lim.max_level),
                    format!("Type{} : Type{}", i, i + 1),
                    pp(ctx, t),
                ))
            } else {
                Ok(Term::Sort(Sort::Type(i + 1)))
            }
        }
        Term::Const(c) => Ok(list_const_type(*c)),
        Term::Pi(a, b, hint) => {
            let ta = infer(lim, ctx, a)?;
            let s1 = as_sort(lim, ctx, &ta, t)?;
            ctx.push(hint.as_str().unwrap_or(""), (**a).clone());
            let tb = infer(lim, ctx, b);
            let s2 = tb.and_then(|tb| as_sort(lim, ctx, &tb, t));
            ctx.pop();
            Ok(Term::Sort(sort_for_pi(s1, s2?)))
        }
        Term::Lam(a, body, hint) => {
            let ta = infer(lim, ctx, a)?;
            let s1 = as_sort(lim, ctx, &ta, t)?;
            let a_norm = norm(lim, ctx, a, t)?;
            ctx.push(hint.as_str().unwrap_or(""), (**a).clone());
            let tb = infer(lim, ctx, body);
            // the produced Pi must itself be well-sorted (rule Abstract)
            let s2 = tb
                .clone()
                .and_then(|tb| infer(lim, ctx, &tb))
                .and_then(|tt| as_sort(lim, ctx, &tt, t));
            ctx.pop();
            let _ = sort_for_pi(s1, s2?);
            Ok(Term::Pi(
                a_norm.into(),
                tb?.into(),
                hint.clone(),
            ))
        }
        Term::App(u, v) => {
            let tu = infer(lim, ctx, u)?;
            let mut fuel = lim.fuel;
            let tu = whnf(&tu, &mut fuel).map_err(|_| err("fuel", "", "", pp(ctx, t)))?;
            match tu {
                Term::Pi(a, b, _) => {
                    check(lim, ctx, v, &a)?;
                    let applied = subst(&b, 0, v);
                    norm(lim, ctx, &applied, t)
                }
                other => Err(err(
                    "apply",
                    "a function type",
                    pp(ctx, &other),
                    pp(ctx, t),
                )),
            }
        }
    }
}

/// Conversion for `check`: beta-prime equality, or the restricted cumulativity
/// of the subsumption rule. The subsumed shape is a non-empty Pi prefix over a
/// `Type` sort; bare sorts do not subsume.
fn convertible(inferred: &Term, expected: &Term) -> bool {
    if inferred == expected {
        return true;
    }
    let mut s = inferred;
    let mut t = expected;
    let mut stripped = 0usize;
    loop {
        match (s, t) {
            (Term::Pi(a1, b1, _), Term::Pi(a2, b2, _)) if a1 == a2 => {
                s = b1;
                t = b2;
                stripped += 1;
            }
            (Term::Sort(Sort::Type(i)), Term::Sort(Sort::Type(j))) => {
                return stripped >= 1 && i < j;
            }
            _ => return false,
        }
    }
}

/// Checks `t` against `expected` (which must itself be well-sorted).
pub fn check(lim: &Limits, ctx: &mut Context, t: &Term, expected: &Term) -> Result<(), TypeError> {
    let inferred = infer(lim, ctx, t)?;
    let expected_n = norm(lim, ctx, expected, t)?;
    if convertible(&inferred, &expected_n) {
        Ok(())
    } else {
        Err(err(
            "conversion",
            pp(ctx, &expected_n),
            pp(ctx, &inferred),
            pp(ctx, t),
        ))
    }
}

/// The sort `s` with `ctx |- ty : s`.
pub fn sort_of(lim: &Limits, ctx: &mut Context, ty: &Term) -> Result<Sort, TypeError> {
    let tt = infer(lim, ctx, ty)?;
    as_sort(lim, ctx, &tt, ty)
}

/// True when `t` is a propositional term: its type is `Prop`.
pub fn is_propositional(lim: &Limits, ctx: &mut Context, t: &Term) -> Result<bool, TypeError> {
    Ok(infer(lim, ctx, t)? == Term::Sort(Sort::Prop))
}

/// True when `t` is a proof term: its type is a propositional term.
pub fn is_proof_term(lim: &Limits, ctx: &mut Context, t: &Term) -> Result<bool, TypeError> {
    let ty = infer(lim, ctx, t)?;
    Ok(sort_of(lim, ctx, &ty)? == Sort::Prop)
}

/// PD classification of `forall x : A, B` from the sorts of `A` and `B`.
pub fn prod_class(lim: &Limits, ctx: &mut Context, a: &Term, b: &Term) -> Result<ProdClass, TypeError> {
    let s1 = sort_of(lim, ctx, a)?;
    ctx.push("", a.clone());
    let s2 = sort_of(lim, ctx, b);
    ctx.pop();
    Ok(match (s1, s2?) {
        (Sort::Prop, Sort::Prop) => ProdClass::PP,
        (Sort::Type(_), Sort::Prop) => ProdClass::TP,
        (Sort::Prop, Sort::Type(_)) => ProdClass::PT,
        (Sort::Type(_), Sort::Type(_)) => ProdClass::TT,
    })
}

/// Bundles inference and classification for the evaluator.
pub fn classify_judgment(
    lim: &Limits,
    ctx: &mut Context,
    t: &Term,
) -> Result<(JudgmentClass, Term), TypeError> {
    let ty = infer(lim, ctx, t)?;
    let class = if ty == Term::Sort(Sort::Prop) {
        JudgmentClass::Propositional
    } else if sort_of(lim, ctx, &ty)? == Sort::Prop {
        JudgmentClass::Proof
    } else {
        JudgmentClass::Other
    };
    Ok((class, ty))
}

/// Checks that every context entry infers to a sort under its prefix and that
/// surface names are pairwise distinct.
pub fn wf_context(lim: &Limits, ctx: &Context) -> Result<(), TypeError> {
    let mut seen: Vec<&str> = Vec::new();
    let mut prefix = Context::empty();
    for (name, ty) in ctx.iter() {
        if !name.is_empty() && seen.contains(&name.as_str()) {
            return Err(err("context", "distinct names", name.clone(), name.clone()));
        }
        seen.push(name);
        let s = infer(lim, &mut prefix, ty).and_then(|tt| as_sort(lim, &prefix, &tt, ty));
        if let Err(mut e) = s {
            e.location = format!("{} : {}", name, pp(&prefix, ty));
            return Err(e);
        }
        prefix.push(name.clone(), ty.clone());
    }
    Ok(())
}
