//! Executable suite for the complete-Heyting-algebra identities over a
//! space's opens. Identities quantified over single opens, pairs and triples
//! run exhaustively; identities quantified over arbitrary subsets or
//! functions run exhaustively when the search space is at most
//! `EXHAUSTIVE_LIMIT` and otherwise by seeded sampling.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::rng::Rng;
use crate::space::{Open, Space, SpaceError};

pub const EXHAUSTIVE_LIMIT: u64 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawFailure {
    /// Identity number, 1 through 13; 0 marks a topology-verification failure.
    pub law: u8,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct LawReport {
    pub failures: Vec<LawFailure>,
    pub cases: u64,
}

impl LawReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn idx(s: &Space, o: Open) -> usize {
    s.open_index(o).unwrap_or(usize::MAX)
}

struct Suite<'a> {
    s: &'a Space,
    opens: Vec<Open>,
    report: LawReport,
}

impl<'a> Suite<'a> {
    fn fail(&mut self, law: u8, detail: String) {
        // keep the first few failures per law; exhaustive sweeps on a bad
        // algebra would otherwise flood the report
        let count = self.report.failures.iter().filter(|f| f.law == law).count();
        if count < 4 {
            self.report.failures.push(LawFailure { law, detail });
        }
    }

    fn case(&mut self) {
        self.report.cases += 1;
    }

    /// Subset families: all of them when feasible, otherwise sampled.
    fn subsets(&self, samples: usize, rng: &mut Rng) -> Vec<Vec<Open>> {
        let n = self.opens.len();
        if n <= 63 && (1u64 << n) <= EXHAUSTIVE_LIMIT {
            (0u64..(1 << n))
                .map(|bits| {
                    (0..n)
                        .filter(|i| bits & (1 << i) != 0)
                        .map(|i| self.opens[i])
                        .collect()
                })
                .collect()
        } else {
            (0..samples)
                .map(|_| {
                    let size = rng.below(n + 1);
                    (0..size).map(|_| self.opens[rng.below(n)]).collect()
                })
                .collect()
        }
    }

    /// Functions opens -> opens as index vectors: exhaustive when feasible.
    fn functions(&self, samples: usize, rng: &mut Rng) -> Vec<Vec<usize>> {
        let n = self.opens.len();
        let total = (n as u64).checked_pow(n as u32);
        if let Some(t) = total {
            if t <= EXHAUSTIVE_LIMIT {
                let mut out = Vec::new();
                let mut cur = alloc::vec![0usize; n];
                loop {
                    out.push(cur.clone());
                    let mut i = 0;
                    loop {
                        if i == n {
                            return out;
                        }
                        cur[i] += 1;
                        if cur[i] < n {
                            break;
                        }
                        cur[i] = 0;
                        i += 1;
                    }
                }
            }
        }
        (0..samples)
            .map(|_| (0..n).map(|_| rng.below(n)).collect())
            .collect()
    }

    fn run(&mut self, samples: usize, rng: &mut Rng) -> Result<(), SpaceError> {
        let s = self.s;
        let opens = self.opens.clone();
        let top = s.whole();

        // (5) empty meet is the unit
        self.case();
        if s.big_meet([])? != top {
            self.fail(5, "empty meet is not the whole space".into());
        }

        for &x in &opens {
            // (2) meet over t of t^(t^x) recovers x
            self.case();
            let mut acc = top;
            for &t in &opens {
                acc = s.meet(acc, s.exp(t, s.exp(t, x)?)?)?;
            }
            if acc != x {
                self.fail(2, format!("double-exponent meet of {} gives {}", idx(s, x), idx(s, acc)));
            }
            // (6) x^1 = x
            self.case();
            if s.exp(x, top)? != x {
                self.fail(6, format!("{}^1 != {}", idx(s, x), idx(s, x)));
            }
        }

        for &x in &opens {
            for &y in &opens {
                let yx = s.exp(y, x)?;
                // (7) y <= y^x
                self.case();
                if !s.leq(y, yx)? {
                    self.fail(7, format!("{} !<= {}^{}", idx(s, y), idx(s, y), idx(s, x)));
                }
                // (8) x <= y implies y^x = 1
                self.case();
                if s.leq(x, y)? && yx != top {
                    self.fail(8, format!("{} <= {} but {}^{} = {}", idx(s, x), idx(s, y), idx(s, y), idx(s, x), idx(s, yx)));
                }
                // (9) y <= x and not x <= y implies y^x = y
                self.case();
                if s.leq(y, x)? && !s.leq(x, y)? && yx != y {
                    self.fail(9, format!(
                        "y={} < x={} but y^x = {} (law 9 is refuted by the exponential adjunction here)",
                        idx(s, y), idx(s, x), idx(s, yx)
                    ));
                }
                // (10) x meet y^x <= y
                self.case();
                if !s.leq(s.meet(x, yx)?, y)? {
                    self.fail(10, format!("modus ponens fails at {} {}", idx(s, x), idx(s, y)));
                }
                // (11) x^y meet y^x = 1 implies x = y
                self.case();
                if s.meet(s.exp(x, y)?, yx)? == top && x != y {
                    self.fail(11, format!("{} and {} mutually imply but differ", idx(s, x), idx(s, y)));
                }
            }
        }

        for &x in &opens {
            for &a in &opens {
                for &b in &opens {
                    // (1) (x^b)^a = x^(a meet b)
                    self.case();
                    let lhs = s.exp(s.exp(x, b)?, a)?;
                    let rhs = s.exp(x, s.meet(a, b)?)?;
                    if lhs != rhs {
                        self.fail(1, format!("currying fails at x={} a={} b={}", idx(s, x), idx(s, a), idx(s, b)));
                    }
                    // (3) x^a meet x^b = x^(a join b)
                    self.case();
                    let lhs = s.meet(s.exp(x, a)?, s.exp(x, b)?)?;
                    let rhs = s.exp(x, s.join(a, b)?)?;
                    if lhs != rhs {
                        self.fail(3, format!("join-splitting fails at x={} a={} b={}", idx(s, x), idx(s, a), idx(s, b)));
                    }
                }
            }
        }

        for family in self.subsets(samples, rng) {
            // (4) meet of a^t over t in S equals a^(join S)
            for &a in &opens {
                self.case();
                let mut lhs = top;
                for &t in &family {
                    lhs = s.meet(lhs, s.exp(a, t)?)?;
                }
                let rhs = s.exp(a, s.big_join(family.iter().copied())?)?;
                if lhs != rhs {
                    self.fail(4, format!("family exponent fails for a={} over {} opens", idx(s, a), family.len()));
                }
            }
            // (12) meet S = 1 implies every member is 1
            self.case();
            if s.big_meet(family.iter().copied())? == top
                && family.iter().any(|&o| o != top)
            {
                self.fail(12, format!("full meet of {} opens hides a non-top member", family.len()));
            }
        }

        for f in self.functions(samples, rng) {
            // (13) (meet of f(t))^x = meet of f(t)^x
            for &x in &opens {
                self.case();
                let mut meet_f = top;
                let mut meet_fx = top;
                for (i, &_t) in opens.iter().enumerate() {
                    let ft = opens[f[i]];
                    meet_f = s.meet(meet_f, ft)?;
                    meet_fx = s.meet(meet_fx, s.exp(ft, x)?)?;
                }
                if s.exp(meet_f, x)? != meet_fx {
                    self.fail(13, format!("exponent does not pass through the meet at x={}", idx(s, x)));
                }
            }
        }

        Ok(())
    }
}

/// Runs the identity suite; the topology itself is verified first and a
/// corrupt family short-circuits with a law-0 failure.
pub fn check_heyting_identities(s: &Space, samples: usize, seed: u64) -> LawReport {
    if let Err(e) = s.verify_topology() {
        return LawReport {
            failures: alloc::vec![LawFailure {
                law: 0,
                detail: format!("topology verification failed: {}", e),
            }],
            cases: 0,
        };
    }
    let mut suite = Suite {
        s,
        opens: s.opens().iter().map(|&m| Open(m)).collect(),
        report: LawReport::default(),
    };
    let mut rng = Rng::new(seed);
    if let Err(e) = suite.run(samples, &mut rng) {
        suite.fail(0, format!("lattice operation failed: {}", e));
    }
    suite.report
}
