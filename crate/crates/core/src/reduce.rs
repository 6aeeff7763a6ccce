//! Fuel-bounded reduction: beta together with the list recursor and list
//! induction contraction rules, leftmost-outermost. The calculus is strongly
//! normalizing on checked terms, so running out of fuel on such a term
//! indicates a bug; fuel protects against unchecked input.

use alloc::vec::Vec;

use crate::term::{app, apps, subst, ListConst, Term};

pub const DEFAULT_FUEL: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FuelExhausted;

impl core::fmt::Display for FuelExhausted {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "reduction fuel exhausted")
    }
}

fn spend(fuel: &mut u64) -> Result<(), FuelExhausted> {
    if *fuel == 0 {
        Err(FuelExhausted)
    } else {
        *fuel -= 1;
        Ok(())
    }
}

fn split_spine(t: Term) -> (Term, Vec<Term>) {
    let mut args = Vec::new();
    let mut head = t;
    while let Term::App(f, a) = head {
        args.push(*a);
        head = *f;
    }
    args.reverse();
    (head, args)
}

/// Matches a weak-head-normal scrutinee against `nil A` / `cons A a l`.
enum ListShape {
    Nil,
    Cons(Term, Term),
    Stuck(Term),
}

fn list_shape(scrut: Term) -> ListShape {
    let (head, mut args) = split_spine(scrut);
    match head {
        Term::Const(ListConst::Nil) if args.len() == 1 => ListShape::Nil,
        Term::Const(ListConst::Cons) if args.len() == 3 => {
            let l = args.pop().unwrap();
            let a = args.pop().unwrap();
            ListShape::Cons(a, l)
        }
        _ => ListShape::Stuck(apps(head, args)),
    }
}

/// Weak head normal form: contracts head beta redexes and the recursor rules
/// until the head is blocked.
pub fn whnf(t: &Term, fuel: &mut u64) -> Result<Term, FuelExhausted> {
    let mut cur = t.clone();
    loop {
        let (head, mut args) = split_spine(cur);
        match head {
            Term::Lam(_, body, _) if !args.is_empty() => {
                spend(fuel)?;
                let arg0 = args.remove(0);
                cur = apps(subst(&body, 0, &arg0), args);
            }
            Term::Const(c @ (ListConst::ListRec | ListConst::ListInd)) if args.len() >= 5 => {
                let scrut = whnf(&args[4], fuel)?;
                match list_shape(scrut) {
                    ListShape::Nil => {
                        spend(fuel)?;
                        let t1 = args[2].clone();
                        cur = apps(t1, args.drain(5..).collect::<Vec<_>>());
                    }
                    ListShape::Cons(a, l) => {
                        spend(fuel)?;
                        let rec_tail = apps(
                            Term::Const(c),
                            [
                                args[0].clone(),
                                args[1].clone(),
                                args[2].clone(),
                                args[3].clone(),
                                l.clone(),
                            ],
                        );
                        let contracted =
                            apps(args[3].clone(), [a, l, rec_tail]);
                        cur = apps(contracted, args.drain(5..).collect::<Vec<_>>());
                    }
                    ListShape::Stuck(s) => {
                        args[4] = s;
                        return Ok(apps(Term::Const(c), args));
                    }
                }
            }
            head => return Ok(apps(head, args)),
        }
    }
}

/// Full normal form, leftmost-outermost: weak head reduction first, then
/// recursion into the remaining subterms.
pub fn normalize(t: &Term, fuel: &mut u64) -> Result<Term, FuelExhausted> {
    let t = whnf(t, fuel)?;
    Ok(match t {
        Term::Var(..) | Term::Sort(_) | Term::Const(_) => t,
        Term::App(f, a) => app(normalize(&f, fuel)?, normalize(&a, fuel)?),
        Term::Lam(a, b, h) => Term::Lam(
            normalize(&a, fuel)?.into(),
            normalize(&b, fuel)?.into(),
            h,
        ),
        Term::Pi(a, b, h) => Term::Pi(
            normalize(&a, fuel)?.into(),
            normalize(&b, fuel)?.into(),
            h,
        ),
    })
}

/// Decides beta-prime equality by normalize-and-compare. Alpha-equivalence is
/// index equality, so plain `==` on normal forms suffices.
pub fn beta_eq(t1: &Term, t2: &Term, fuel: u64) -> Result<bool, FuelExhausted> {
    let mut fuel = fuel;
    let n1 = normalize(t1, &mut fuel)?;
    let n2 = normalize(t2, &mut fuel)?;
    Ok(n1 == n2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_closed;
    use crate::term::{falsum, lam, prop, var, Hint};

    fn norm(src: &str) -> Term {
        let mut fuel = DEFAULT_FUEL;
        normalize(&parse_closed(src).unwrap(), &mut fuel).unwrap()
    }

    #[test]
    fn single_beta_step() {
        assert_eq!(norm("(fun (x : Prop) => x) False"), falsum());
    }

    #[test]
    fn beta_eq_matches_substitution() {
        let redex = parse_closed("(fun (x : Prop) => x -> x) False").unwrap();
        let contracted = parse_closed("False -> False").unwrap();
        assert!(beta_eq(&redex, &contracted, DEFAULT_FUEL).unwrap());
        let t = parse_closed("forall P : Prop, P").unwrap();
        assert!(beta_eq(&t, &t, DEFAULT_FUEL).unwrap());
    }

    #[test]
    fn list_rec_on_nil() {
        // list_rec A F t1 t2 (nil A) -> t1
        let t = norm(
            "list_rec Prop (fun (l : list Prop) => Prop) False \
             (fun (x : Prop) => fun (l : list Prop) => fun (ind : Prop) => x) \
             (nil Prop)",
        );
        assert_eq!(t, falsum());
    }

    #[test]
    fn list_rec_on_cons_unfolds_once() {
        // list_rec A F t1 t2 (cons A a l) = t2 a l (list_rec A F t1 t2 l)
        let lhs = parse_closed(
            "list_rec Prop (fun (l : list Prop) => Prop) False \
             (fun (x : Prop) => fun (l : list Prop) => fun (ind : Prop) => x) \
             (cons Prop (False -> False) (nil Prop))",
        )
        .unwrap();
        let rhs = parse_closed("False -> False").unwrap();
        assert!(beta_eq(&lhs, &rhs, DEFAULT_FUEL).unwrap());
    }

    #[test]
    fn list_ind_on_cons_matches_rule() {
        let names: alloc::vec::Vec<_> = ["A", "F", "h1", "h2", "a", "l"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let lhs = crate::parse::parse_term("list_ind A F h1 h2 (cons A a l)", &names).unwrap();
        let rhs = crate::parse::parse_term("h2 a l (list_ind A F h1 h2 l)", &names).unwrap();
        assert!(beta_eq(&lhs, &rhs, DEFAULT_FUEL).unwrap());
    }

    #[test]
    fn fuel_exhaustion_reported() {
        // (fun (x : Prop) => x) applied five times needs five steps
        let t = parse_closed(
            "(fun (a : Prop) => a) ((fun (b : Prop) => b) ((fun (c : Prop) => c) False))",
        )
        .unwrap();
        let mut fuel = 2;
        assert_eq!(normalize(&t, &mut fuel), Err(FuelExhausted));
        assert!(beta_eq(&t, &falsum(), DEFAULT_FUEL).unwrap());
    }

    #[test]
    fn normalizes_under_binders() {
        let t = norm("fun (P : Prop) => (fun (Q : Prop) => Q) P");
        assert_eq!(t, lam(prop(), var(0), Hint::none()));
    }
}
