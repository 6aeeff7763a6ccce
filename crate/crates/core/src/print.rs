//! Pretty printer. Emits the raw grammar only (`forall`, `fun`, `->`,
//! application, atoms); connective sugar is never reconstructed. Printing
//! then parsing yields an alpha-equal term.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::format;

use crate::parse::is_reserved;
use crate::term::{Sort, Term};

const LVL_TERM: u8 = 0;
const LVL_APP: u8 = 1;
const LVL_ATOM: u8 = 2;

/// Prints `t` with the given context names (outermost first) supplying the
/// free variables. Binder hints are kept where possible and freshened on
/// clashes with anything in scope.
pub fn print_term(t: &Term, ctx_names: &[String]) -> String {
    let mut scope: Vec<String> = ctx_names.to_vec();
    let mut out = String::new();
    go(t, &mut scope, LVL_TERM, &mut out);
    out
}

fn go(t: &Term, scope: &mut Vec<String>, lvl: u8, out: &mut String) {
    match t {
        Term::Var(i, _) => {
            let pos = scope.len().checked_sub(i + 1);
            match pos.and_then(|p| scope.get(p)) {
                Some(name) => out.push_str(name),
                // out-of-scope index; only reachable on unchecked terms
                None => out.push_str(&format!("_x{}", i)),
            }
        }
        Term::Sort(Sort::Prop) => out.push_str("Prop"),
        Term::Sort(Sort::Type(i)) => out.push_str(&format!("Type{}", i)),
        Term::Const(c) => out.push_str(c.name()),
        Term::App(f, a) => {
            paren(lvl > LVL_APP, out, |out| {
                go(f, scope, LVL_APP, out);
                out.push(' ');
                go(a, scope, LVL_ATOM, out);
            });
        }
        Term::Lam(ann, body, hint) => {
            let name = fresh(scope, hint.as_str(), ann);
            paren(lvl > LVL_TERM, out, |out| {
                out.push_str("fun (");
                out.push_str(&name);
                out.push_str(" : ");
                go(ann, scope, LVL_TERM, out);
                out.push_str(") => ");
                scope.push(name);
                go(body, scope, LVL_TERM, out);
                scope.pop();
            });
        }
        Term::Pi(dom, cod, hint) => {
            if cod.uses_var(0) {
                let name = fresh(scope, hint.as_str(), dom);
                paren(lvl > LVL_TERM, out, |out| {
                    out.push_str("forall ");
                    out.push_str(&name);
                    out.push_str(" : ");
                    go(dom, scope, LVL_TERM, out);
                    out.push_str(", ");
                    scope.push(name);
                    go(cod, scope, LVL_TERM, out);
                    scope.pop();
                });
            } else {
                paren(lvl > LVL_TERM, out, |out| {
                    go(dom, scope, LVL_APP, out);
                    out.push_str(" -> ");
                    // placeholder for the unused binder slot
                    scope.push(String::new());
                    go(cod, scope, LVL_TERM, out);
                    scope.pop();
                });
            }
        }
    }
}

fn paren(needed: bool, out: &mut String, body: impl FnOnce(&mut String)) {
    if needed {
        out.push('(');
        body(out);
        out.push(')');
    } else {
        body(out);
    }
}

fn fresh(scope: &[String], hint: Option<&str>, dom: &Term) -> String {
    let base = match hint {
        Some(h) if !h.is_empty() => h.to_string(),
        _ => match dom {
            Term::Sort(Sort::Prop) => "P".to_string(),
            Term::Sort(Sort::Type(_)) => "A".to_string(),
            _ => "x".to_string(),
        },
    };
    let ok = |name: &str| !is_reserved(name) && !scope.iter().any(|s| s == name);
    if ok(&base) {
        return base;
    }
    let mut n = 0usize;
    loop {
        let cand = format!("{}{}", base, n);
        if ok(&cand) {
            return cand;
        }
        n += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_term;
    use crate::term::{self, app, lam, pi, prop, type_, var, Hint};

    fn roundtrips(t: &Term, names: &[String]) {
        let s = print_term(t, names);
        let back = parse_term(&s, names).unwrap_or_else(|e| panic!("reparse of {:?}: {}", s, e));
        assert_eq!(&back, t, "round trip through {:?}", s);
    }

    #[test]
    fn sorts_and_dependent_pi() {
        assert_eq!(print_term(&type_(1), &[]), "Type1");
        let bot = pi(prop(), var(0), Hint::named("P"));
        assert_eq!(print_term(&bot, &[]), "forall P : Prop, P");
        // default hint for Prop-typed binders
        let bot_nohint = pi(prop(), var(0), Hint::none());
        assert_eq!(print_term(&bot_nohint, &[]), "forall P : Prop, P");
    }

    #[test]
    fn non_dependent_pi_prints_as_arrow() {
        let t = term::arrow(prop(), prop());
        assert_eq!(print_term(&t, &[]), "Prop -> Prop");
        roundtrips(&t, &[]);
    }

    #[test]
    fn shadowed_hints_get_freshened() {
        // fun (P : Prop) => fun (P : Prop) => <outer P>
        let t = lam(
            prop(),
            lam(prop(), var(1), Hint::named("P")),
            Hint::named("P"),
        );
        let s = print_term(&t, &[]);
        assert_eq!(s, "fun (P : Prop) => fun (P0 : Prop) => P");
        roundtrips(&t, &[]);
    }

    #[test]
    fn application_parens() {
        let names = vec!["f".to_string(), "x".to_string()];
        let t = app(var(1), app(var(1), var(0)));
        assert_eq!(print_term(&t, &names), "f (f x)");
        roundtrips(&t, &names);
        let u = app(app(var(1), var(0)), var(0));
        assert_eq!(print_term(&u, &names), "f x x");
        roundtrips(&u, &names);
    }

    #[test]
    fn arrow_nesting_parens() {
        let t = term::arrow(term::arrow(prop(), prop()), prop());
        assert_eq!(print_term(&t, &[]), "(Prop -> Prop) -> Prop");
        roundtrips(&t, &[]);
        let u = term::arrow(prop(), term::arrow(prop(), prop()));
        assert_eq!(print_term(&u, &[]), "Prop -> Prop -> Prop");
        roundtrips(&u, &[]);
    }

    #[test]
    fn binder_under_application_is_parenthesized() {
        let t = app(
            lam(prop(), var(0), Hint::named("P")),
            pi(prop(), var(0), Hint::named("P")),
        );
        let s = print_term(&t, &[]);
        assert_eq!(s, "(fun (P : Prop) => P) (forall P : Prop, P)");
        roundtrips(&t, &[]);
    }
}
