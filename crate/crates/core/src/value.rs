//! Semantic objects. A value is a point of the space (interpreting proofs),
//! an open set (interpreting propositions), a finite set, a finite function
//! graph, or a tagged pair (the list encoding). Equality is extensional:
//! sets and graphs live in canonical ordered form.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::space::{Open, Space};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Value {
    /// A point of the space: the interpretation of every proof term.
    Point(usize),
    /// An open set: the interpretation of a proposition.
    Open(Open),
    /// A finite set of values: carriers, universes, product types.
    Set(BTreeSet<Value>),
    /// A function as a finite graph; keys are pairwise distinct by
    /// construction.
    Graph(BTreeMap<Value, Value>),
    /// A tagged pair `(tag, payload)`; only used by the list encoding below.
    Pair(Box<Value>, Box<Value>),
}

impl Value {
    pub fn set(items: impl IntoIterator<Item = Value>) -> Value {
        Value::Set(items.into_iter().collect())
    }

    pub fn graph(pairs: impl IntoIterator<Item = (Value, Value)>) -> Value {
        Value::Graph(pairs.into_iter().collect())
    }

    pub fn as_open(&self) -> Option<Open> {
        match self {
            Value::Open(o) => Some(*o),
            _ => None,
        }
    }

    pub fn as_set(&self) -> Option<&BTreeSet<Value>> {
        match self {
            Value::Set(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_graph(&self) -> Option<&BTreeMap<Value, Value>> {
        match self {
            Value::Graph(g) => Some(g),
            _ => None,
        }
    }

    /// Compact structural dump for reports.
    pub fn dump(&self, s: &Space) -> String {
        match self {
            Value::Point(p) => format!("point {}", s.point_name(*p)),
            Value::Open(o) => match s.open_index(*o) {
                Some(i) => format!("open {}", i),
                None => format!("mask {:#b}", o.0),
            },
            Value::Set(items) => {
                let inner: Vec<String> = items.iter().map(|v| v.dump(s)).collect();
                format!("{{{}}}", inner.join(", "))
            }
            Value::Graph(pairs) => {
                let inner: Vec<String> = pairs
                    .iter()
                    .map(|(k, v)| format!("{} -> {}", k.dump(s), v.dump(s)))
                    .collect();
                format!("[{}]", inner.join(", "))
            }
            Value::Pair(a, b) => format!("({}, {})", a.dump(s), b.dump(s)),
        }
    }
}

// -- the tagged-pair list encoding -------------------------------------------

/// `(0, .)`: the empty list. The fixed dot element is the empty set.
pub fn nil_value() -> Value {
    Value::Pair(Box::new(Value::set([])), Box::new(Value::set([])))
}

/// `(1, (head, tail))`.
pub fn cons_value(head: Value, tail: Value) -> Value {
    Value::Pair(
        Box::new(Value::set([Value::set([])])),
        Box::new(Value::Pair(Box::new(head), Box::new(tail))),
    )
}

/// Depth (= length) of a list value, or `None` when the value is not one.
pub fn list_depth(v: &Value) -> Option<usize> {
    let mut depth = 0usize;
    let mut cur = v;
    loop {
        match cur {
            Value::Pair(tag, rest) => match (tag.as_ref(), rest.as_ref()) {
                (Value::Set(t), Value::Set(d)) if t.is_empty() && d.is_empty() => {
                    return Some(depth)
                }
                (Value::Set(t), Value::Pair(_, tail)) if t.len() == 1 => {
                    depth += 1;
                    cur = tail;
                }
                _ => return None,
            },
            _ => return None,
        }
    }
}

pub fn is_list_value(v: &Value) -> bool {
    list_depth(v).is_some()
}

/// Head and tail of a non-empty list value.
pub fn uncons(v: &Value) -> Option<(&Value, &Value)> {
    match v {
        Value::Pair(tag, rest) => match (tag.as_ref(), rest.as_ref()) {
            (Value::Set(t), Value::Pair(h, tl)) if t.len() == 1 => Some((h, tl)),
            _ => None,
        },
        _ => None,
    }
}

/// The family of all opens as a value: the interpretation of `Prop`.
pub fn opens_value(s: &Space) -> Value {
    Value::set(s.opens().iter().map(|&m| Value::Open(Open(m))))
}

/// Finite stand-ins for the universe hierarchy. `levels[i]` is the carrier
/// family interpreting `Type i`; each level contains the previous one and the
/// previous level's family as an element, mirroring the closure facts the
/// soundness argument needs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TestUniverse {
    levels: Vec<BTreeSet<Value>>,
}

impl TestUniverse {
    /// Default universe over a space: level 0 holds the three hereditarily
    /// finite sets 0, 1, 2 plus the space's own family of opens (the
    /// interpretation assumes the space is drawn from the lowest universe).
    pub fn default_for(s: &Space, max_level: u32) -> Self {
        let zero = Value::set([]);
        let one = Value::set([zero.clone()]);
        let two = Value::set([zero.clone(), one.clone()]);
        Self::from_level0([zero, one, two, opens_value(s)], max_level)
    }

    /// Universe with an explicit level-0 carrier family.
    pub fn from_level0(level0: impl IntoIterator<Item = Value>, max_level: u32) -> Self {
        let mut levels: Vec<BTreeSet<Value>> = Vec::new();
        levels.push(level0.into_iter().collect());
        for i in 0..max_level as usize {
            let mut next = levels[i].clone();
            next.insert(Value::Set(levels[i].clone()));
            levels.push(next);
        }
        TestUniverse { levels }
    }

    pub fn max_level(&self) -> u32 {
        (self.levels.len() - 1) as u32
    }

    pub fn level(&self, i: u32) -> &BTreeSet<Value> {
        let i = (i as usize).min(self.levels.len() - 1);
        &self.levels[i]
    }

    pub fn level_value(&self, i: u32) -> Value {
        Value::Set(self.level(i).clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extensional_equality() {
        let a = Value::set([Value::Point(1), Value::Point(0), Value::Point(1)]);
        let b = Value::set([Value::Point(0), Value::Point(1)]);
        assert_eq!(a, b);
    }

    #[test]
    fn list_encoding_shape() {
        let nil = nil_value();
        assert_eq!(list_depth(&nil), Some(0));
        let l1 = cons_value(Value::Point(0), nil.clone());
        let l2 = cons_value(Value::Point(1), l1.clone());
        assert_eq!(list_depth(&l2), Some(2));
        assert!(is_list_value(&l2));
        let (h, t) = uncons(&l2).unwrap();
        assert_eq!(h, &Value::Point(1));
        assert_eq!(t, &l1);
        assert!(!is_list_value(&Value::Point(0)));
        assert!(uncons(&nil).is_none());
    }

    #[test]
    fn universe_levels_nest() {
        let s = Space::sierpinski();
        let u = TestUniverse::default_for(&s, 3);
        assert_eq!(u.max_level(), 3);
        for i in 0..3 {
            // inclusion
            assert!(u.level(i).is_subset(u.level(i + 1)));
            // membership of the level itself one step up
            assert!(u.level(i + 1).contains(&u.level_value(i)));
        }
        // the space's opens family is a level-0 carrier
        assert!(u.level(0).contains(&opens_value(&s)));
        assert_eq!(u.level(0).len(), 4);
    }
}
