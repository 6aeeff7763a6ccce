//! Abstract syntax: de Bruijn terms, sorts, contexts, shifting and
//! substitution, plus builders for the derived logical connectives.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

/// Display-only name attached to binders and variables.
///
/// `Hint` compares equal to every other hint, so `Term`'s derived equality is
/// exactly alpha-equivalence on de Bruijn indices.
#[derive(Clone, Default)]
pub struct Hint(pub Option<String>);

impl Hint {
    pub fn named(s: &str) -> Self {
        Hint(Some(s.to_string()))
    }

    pub fn none() -> Self {
        Hint(None)
    }

    pub fn as_str(&self) -> Option<&str> {
        self.0.as_deref()
    }
}

impl PartialEq for Hint {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Hint {}

impl core::fmt::Debug for Hint {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match &self.0 {
            Some(s) => write!(f, "{:?}", s),
            None => write!(f, "_"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Sort {
    Prop,
    Type(u32),
}

impl core::fmt::Display for Sort {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Sort::Prop => write!(f, "Prop"),
            Sort::Type(i) => write!(f, "Type{}", i),
        }
    }
}

/// The five built-in list constants. They are leaves of the AST, typed by a
/// fixed signature table in the empty context.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum ListConst {
    List,
    Nil,
    Cons,
    ListRec,
    ListInd,
}

impl ListConst {
    pub fn name(self) -> &'static str {
        match self {
            ListConst::List => "list",
            ListConst::Nil => "nil",
            ListConst::Cons => "cons",
            ListConst::ListRec => "list_rec",
            ListConst::ListInd => "list_ind",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Term {
    /// De Bruijn index: 0 is the innermost binder; indices past the binder
    /// prefix refer to context slots.
    Var(usize, Hint),
    App(Box<Term>, Box<Term>),
    /// `fun (x : ann) => body`
    Lam(Box<Term>, Box<Term>, Hint),
    /// `forall x : dom, cod`
    Pi(Box<Term>, Box<Term>, Hint),
    Sort(Sort),
    Const(ListConst),
}

pub fn var(i: usize) -> Term {
    Term::Var(i, Hint::none())
}

pub fn var_named(i: usize, name: &str) -> Term {
    Term::Var(i, Hint::named(name))
}

pub fn app(f: Term, a: Term) -> Term {
    Term::App(Box::new(f), Box::new(a))
}

pub fn apps(head: Term, args: impl IntoIterator<Item = Term>) -> Term {
    args.into_iter().fold(head, app)
}

pub fn lam(ann: Term, body: Term, hint: Hint) -> Term {
    Term::Lam(Box::new(ann), Box::new(body), hint)
}

pub fn pi(dom: Term, cod: Term, hint: Hint) -> Term {
    Term::Pi(Box::new(dom), Box::new(cod), hint)
}

pub fn prop() -> Term {
    Term::Sort(Sort::Prop)
}

pub fn type_(i: u32) -> Term {
    Term::Sort(Sort::Type(i))
}

impl Term {
    /// Splits an application spine into its head and argument list.
    pub fn spine(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut head = self;
        while let Term::App(f, a) = head {
            args.push(a.as_ref());
            head = f;
        }
        args.reverse();
        (head, args)
    }

    /// True when `Var(k)` occurs free at the top level of this term.
    pub fn uses_var(&self, k: usize) -> bool {
        match self {
            Term::Var(i, _) => *i == k,
            Term::App(f, a) => f.uses_var(k) || a.uses_var(k),
            Term::Lam(a, b, _) | Term::Pi(a, b, _) => a.uses_var(k) || b.uses_var(k + 1),
            Term::Sort(_) | Term::Const(_) => false,
        }
    }
}

/// Shifts free indices `>= cutoff` up by `by`.
pub fn shift_above(t: &Term, by: usize, cutoff: usize) -> Term {
    match t {
        Term::Var(i, h) => {
            if *i >= cutoff {
                Term::Var(i + by, h.clone())
            } else {
                t.clone()
            }
        }
        Term::App(f, a) => app(shift_above(f, by, cutoff), shift_above(a, by, cutoff)),
        Term::Lam(a, b, h) => lam(
            shift_above(a, by, cutoff),
            shift_above(b, by, cutoff + 1),
            h.clone(),
        ),
        Term::Pi(a, b, h) => pi(
            shift_above(a, by, cutoff),
            shift_above(b, by, cutoff + 1),
            h.clone(),
        ),
        Term::Sort(_) | Term::Const(_) => t.clone(),
    }
}

pub fn shift(t: &Term, by: usize) -> Term {
    shift_above(t, by, 0)
}

/// Substitution `t[x_j \ v]` in beta-contraction form: occurrences of index
/// `j` become `v` (shifted across the binders crossed so far) and indices
/// above `j` drop by one, closing the eliminated binder.
pub fn subst(t: &Term, j: usize, v: &Term) -> Term {
    match t {
        Term::Var(i, h) => {
            if *i == j {
                shift(v, j)
            } else if *i > j {
                Term::Var(i - 1, h.clone())
            } else {
                t.clone()
            }
        }
        Term::App(f, a) => app(subst(f, j, v), subst(a, j, v)),
        Term::Lam(a, b, h) => lam(subst(a, j, v), subst(b, j + 1, v), h.clone()),
        Term::Pi(a, b, h) => pi(subst(a, j, v), subst(b, j + 1, v), h.clone()),
        Term::Sort(_) | Term::Const(_) => t.clone(),
    }
}

/// Number of context slots the term references: the least context length the
/// term is scope-closed under.
pub fn free_context_arity(t: &Term) -> usize {
    fn go(t: &Term, depth: usize) -> usize {
        match t {
            Term::Var(i, _) => {
                if *i >= depth {
                    *i - depth + 1
                } else {
                    0
                }
            }
            Term::App(f, a) => go(f, depth).max(go(a, depth)),
            Term::Lam(a, b, _) | Term::Pi(a, b, _) => go(a, depth).max(go(b, depth + 1)),
            Term::Sort(_) | Term::Const(_) => 0,
        }
    }
    go(t, 0)
}

/// A typing context: ordered entries `(name, type)`, each type expressed
/// relative to the prefix before it.
#[derive(Clone, Default, Debug, PartialEq, Eq)]
pub struct Context {
    entries: Vec<(String, Term)>,
}

impl Context {
    pub fn empty() -> Self {
        Context::default()
    }

    pub fn push(&mut self, name: impl Into<String>, ty: Term) {
        self.entries.push((name.into(), ty));
    }

    pub fn pop(&mut self) {
        self.entries.pop();
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry by slot position (0 = outermost).
    pub fn entry(&self, slot: usize) -> Option<&(String, Term)> {
        self.entries.get(slot)
    }

    /// Resolves a de Bruijn index seen from the full context to its slot.
    pub fn slot_of_index(&self, index: usize) -> Option<usize> {
        self.len().checked_sub(index + 1)
    }

    pub fn names(&self) -> Vec<String> {
        self.entries.iter().map(|(n, _)| n.clone()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(String, Term)> {
        self.entries.iter()
    }
}

impl FromIterator<(String, Term)> for Context {
    fn from_iter<I: IntoIterator<Item = (String, Term)>>(iter: I) -> Self {
        Context {
            entries: iter.into_iter().collect(),
        }
    }
}

// ---------------------------------------------------------------------------
// Encodings of the logical symbols. Connectives are definitional sugar over
// Pi; they are expanded before type checking and never re-sugared on output.
// ---------------------------------------------------------------------------

/// `A -> B`, with `B` not depending on the bound variable.
pub fn arrow(a: Term, b: Term) -> Term {
    pi(a, shift(&b, 1), Hint::none())
}

/// `False`: `forall P : Prop, P`.
pub fn falsum() -> Term {
    pi(prop(), var_named(0, "P"), Hint::named("P"))
}

/// `~A`: `A -> False`.
pub fn neg(a: Term) -> Term {
    arrow(a, falsum())
}

/// `A /\ B`: `forall P : Prop, (A -> B -> P) -> P`.
pub fn and(a: Term, b: Term) -> Term {
    let premise = pi(
        shift(&a, 1),
        pi(shift(&b, 2), var(2), Hint::none()),
        Hint::none(),
    );
    pi(prop(), pi(premise, var(1), Hint::none()), Hint::named("P"))
}

/// `A \/ B`: `forall P : Prop, (A -> P) -> (B -> P) -> P`.
pub fn or(a: Term, b: Term) -> Term {
    let left = pi(shift(&a, 1), var(1), Hint::none());
    let right = pi(shift(&b, 2), var(2), Hint::none());
    pi(
        prop(),
        pi(left, pi(right, var(2), Hint::none()), Hint::none()),
        Hint::named("P"),
    )
}

/// `exists x : A, B`: `forall P : Prop, (forall x : A, B -> P) -> P`.
/// `B` may use index 0 for `x`.
pub fn exists(hint: Hint, a: Term, b: Term) -> Term {
    // Under the inserted `forall P`, `x` keeps index 0 and the old context
    // moves up by one.
    let b_in = shift_above(&b, 1, 1);
    let premise = pi(
        shift(&a, 1),
        pi(b_in, var(2), Hint::none()),
        hint,
    );
    pi(prop(), pi(premise, var(1), Hint::none()), Hint::named("P"))
}

/// `A <-> B`: `(A -> B) /\ (B -> A)`.
pub fn iff(a: Term, b: Term) -> Term {
    and(arrow(a.clone(), b.clone()), arrow(b, a))
}

/// `x =[A] y`: `forall Q : A -> Prop, Q x <-> Q y`.
pub fn eq(a: Term, x: Term, y: Term) -> Term {
    let qx = app(var_named(0, "Q"), shift(&x, 1));
    let qy = app(var_named(0, "Q"), shift(&y, 1));
    pi(arrow(a, prop()), iff(qx, qy), Hint::named("Q"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_equivalence_ignores_hints() {
        let t1 = lam(prop(), var_named(0, "x"), Hint::named("x"));
        let t2 = lam(prop(), var(0), Hint::named("y"));
        assert_eq!(t1, t2);
    }

    #[test]
    fn subst_replaces_and_lowers() {
        // clause (i): the hit case and the miss case
        assert_eq!(subst(&var(0), 0, &prop()), prop());
        assert_eq!(subst(&var(1), 0, &prop()), var(0));
        // clause (v): sorts are untouched
        assert_eq!(subst(&prop(), 0, &type_(2)), prop());
    }

    #[test]
    fn subst_under_binder_shifts_replacement() {
        // (fun (y : Prop) => x) [x \ y0] must not capture: the replacement
        // Var(0) becomes Var(1) under the binder.
        let t = lam(prop(), var(1), Hint::named("y"));
        let got = subst(&t, 0, &var(0));
        assert_eq!(got, lam(prop(), var(1), Hint::none()));
    }

    #[test]
    fn arity_counts_context_slots() {
        assert_eq!(free_context_arity(&var(0)), 1);
        assert_eq!(free_context_arity(&prop()), 0);
        assert_eq!(free_context_arity(&lam(prop(), var(1), Hint::none())), 1);
        assert_eq!(free_context_arity(&lam(prop(), var(0), Hint::none())), 0);
    }

    #[test]
    fn encodings_have_expected_shape() {
        // False = forall P : Prop, P
        assert_eq!(falsum(), pi(prop(), var(0), Hint::none()));
        // A /\ B with closed A, B
        let a = falsum();
        let b = prop_to_prop();
        let conj = and(a.clone(), b.clone());
        let expected = pi(
            prop(),
            pi(
                pi(a, pi(b, var(2), Hint::none()), Hint::none()),
                var(1),
                Hint::none(),
            ),
            Hint::none(),
        );
        assert_eq!(conj, expected);
    }

    fn prop_to_prop() -> Term {
        arrow(prop(), prop())
    }

    #[test]
    fn exists_keeps_dependency_on_bound_variable() {
        // exists x : A, (x-ish) — body uses Var 0 for x and Var 1 for a
        // context slot, which must move to Var 2 under the inserted P.
        let body = app(var(1), var(0));
        let ex = exists(Hint::named("x"), prop(), body);
        let expected = pi(
            prop(),
            pi(
                pi(
                    prop(),
                    pi(app(var(2), var(0)), var(2), Hint::none()),
                    Hint::none(),
                ),
                var(1),
                Hint::none(),
            ),
            Hint::none(),
        );
        assert_eq!(ex, expected);
    }
}
