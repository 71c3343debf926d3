//! Insertion encodings and the two maps onto `S_n` that turn flattened
//! descents into big descents.
//!
//! An encoding of length `n - 1` is a list of pairs `(a_i, b_i)`. Both maps
//! read it left to right, inserting the letter `i + 1` at step `i`; `a_i = 1`
//! steps are exactly the ones that create a new descent (for [`bij_g`]) or a
//! new big descent (for [`bij_h`]).

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::perm::{CycleForm, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error("invalid encoding: {0}")]
    InvalidEncoding(String),
    #[error("cannot parse encoding: {0}")]
    Parse(String),
}

/// One `(a, b)` pair: `a` selects the insertion family, `b >= 1` the site.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub a: u8,
    pub b: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct InsertionEncoding {
    steps: Vec<Step>,
}

impl InsertionEncoding {
    pub fn new(pairs: &[(u8, usize)]) -> Self {
        InsertionEncoding {
            steps: pairs.iter().map(|&(a, b)| Step { a, b }).collect(),
        }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Size of the permutations this encodes.
    pub fn n(&self) -> usize {
        self.steps.len() + 1
    }

    pub fn ones(&self) -> usize {
        self.steps.iter().filter(|s| s.a == 1).count()
    }

    /// Checks the site ranges step by step, reporting the first violation.
    pub fn check(&self) -> Result<(), BijectionError> {
        let mut s = 0;
        for (idx, step) in self.steps.iter().enumerate() {
            let i = idx + 1;
            let max = match step.a {
                0 => s + 2,
                1 if i >= 2 => i - 1 - s,
                1 => 0,
                _ => {
                    return Err(BijectionError::InvalidEncoding(format!(
                        "a_{i} = {} is not a bit",
                        step.a
                    )))
                }
            };
            if step.b == 0 || step.b > max {
                return Err(BijectionError::InvalidEncoding(format!(
                    "b_{i} = {} outside [1, {max}] for a_{i} = {}",
                    step.b, step.a
                )));
            }
            s += step.a as usize;
        }
        Ok(())
    }

    pub fn validate(&self) -> bool {
        self.check().is_ok()
    }
}

pub fn validate_encoding(e: &InsertionEncoding) -> bool {
    e.validate()
}

impl fmt::Display for InsertionEncoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.steps.iter().enumerate() {
            if k > 0 {
                f.write_str(";")?;
            }
            write!(f, "{},{}", s.a, s.b)?;
        }
        Ok(())
    }
}

impl FromStr for InsertionEncoding {
    type Err = BijectionError;

    fn from_str(text: &str) -> Result<Self, BijectionError> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(InsertionEncoding::default());
        }
        let steps = text
            .split(';')
            .map(|pair| {
                let (a, b) = pair
                    .split_once(',')
                    .ok_or_else(|| BijectionError::Parse(format!("{pair:?} is not a pair")))?;
                let a = a.trim().parse::<u8>();
                let b = b.trim().parse::<usize>();
                match (a, b) {
                    (Ok(a), Ok(b)) => Ok(Step { a, b }),
                    _ => Err(BijectionError::Parse(format!(
                        "{pair:?} is not a pair of integers"
                    ))),
                }
            })
            .collect::<Result<_, _>>()?;
        Ok(InsertionEncoding { steps })
    }
}

/// Flattened word together with the positions that open a cycle.
struct FlatCycles {
    word: Vec<u32>,
    leader: Vec<bool>,
}

impl FlatCycles {
    fn from_cycle_form(c: &CycleForm) -> Self {
        let mut word = Vec::with_capacity(c.len());
        let mut leader = Vec::with_capacity(c.len());
        for cycle in c.cycles() {
            for (k, &x) in cycle.iter().enumerate() {
                word.push(x);
                leader.push(k == 0);
            }
        }
        FlatCycles { word, leader }
    }

    fn to_cycle_form(&self) -> CycleForm {
        let mut cycles: Vec<Vec<u32>> = Vec::new();
        for (&x, &lead) in self.word.iter().zip(&self.leader) {
            match cycles.last_mut() {
                Some(c) if !lead => c.push(x),
                _ => cycles.push(vec![x]),
            }
        }
        CycleForm::from_cycles_unchecked(cycles)
    }

    /// Gap `p` sits between `word[p - 1]` and `word[p]`, `1 <= p < len`.
    fn gaps(&self, descent: bool) -> impl Iterator<Item = usize> + '_ {
        (1..self.word.len()).filter(move |&p| (self.word[p - 1] > self.word[p]) == descent)
    }
}

/// `g`: builds a permutation in cycle form whose flattened descents are
/// counted by the 1-bits of `e`.
pub fn bij_g(e: &InsertionEncoding) -> Result<CycleForm, BijectionError> {
    e.check()?;
    let mut fc = FlatCycles {
        word: vec![1],
        leader: vec![true],
    };
    let mut s = 0;
    for (idx, step) in e.steps.iter().enumerate() {
        let letter = idx as u32 + 2;
        if step.a == 0 && step.b > s {
            fc.word.push(letter);
            fc.leader.push(step.b == s + 2);
        } else {
            let p = fc
                .gaps(step.a == 0)
                .nth(step.b - 1)
                .expect("site count matches the validated range");
            fc.word.insert(p, letter);
            fc.leader.insert(p, false);
        }
        s += step.a as usize;
    }
    Ok(fc.to_cycle_form())
}

/// Recovers the encoding of `p` under [`bij_g`].
pub fn bij_g_inv(p: &Permutation) -> InsertionEncoding {
    let mut fc = FlatCycles::from_cycle_form(&p.standard_cycle_form());
    let mut steps = Vec::with_capacity(p.len().saturating_sub(1));
    for letter in (2..=p.len() as u32).rev() {
        let pos = fc
            .word
            .iter()
            .position(|&x| x == letter)
            .expect("letter present");
        let was_leader = fc.leader[pos];
        fc.word.remove(pos);
        fc.leader.remove(pos);
        let s = fc.gaps(true).count();
        let step = if was_leader {
            debug_assert_eq!(pos, fc.word.len());
            Step { a: 0, b: s + 2 }
        } else if pos == fc.word.len() {
            Step { a: 0, b: s + 1 }
        } else {
            let descent = fc.word[pos - 1] > fc.word[pos];
            let b = fc
                .gaps(descent)
                .position(|g| g == pos)
                .expect("gap present")
                + 1;
            Step {
                a: u8::from(!descent),
                b,
            }
        };
        steps.push(step);
    }
    steps.reverse();
    InsertionEncoding { steps }
}

fn is_big_descent(w: &[u32], p: usize) -> bool {
    w[p - 1] >= w[p] + 2
}

/// Insertion positions for the `a = 0` steps of `h`, in the order the site
/// index `b` enumerates them: big-descent gaps left to right, then directly
/// before the current maximum, then the end.
fn h_zero_sites(w: &[u32], max: u32) -> Vec<usize> {
    let mut sites: Vec<usize> = (1..w.len()).filter(|&p| is_big_descent(w, p)).collect();
    sites.push(w.iter().position(|&x| x == max).expect("maximum present"));
    sites.push(w.len());
    sites
}

/// Insertion positions for the `a = 1` steps of `h`, left to right.
fn h_one_sites(w: &[u32], max: u32) -> Vec<usize> {
    let max_first = w[0] == max;
    let front = (!max_first).then_some(0);
    front
        .into_iter()
        .chain((1..w.len()).filter(|&p| !is_big_descent(w, p) && w[p] != max))
        .collect()
}

/// `h`: builds a word whose big descents are counted by the 1-bits of `e`.
pub fn bij_h(e: &InsertionEncoding) -> Result<Permutation, BijectionError> {
    e.check()?;
    let mut w = vec![1u32];
    for (idx, step) in e.steps.iter().enumerate() {
        let max = idx as u32 + 1;
        let sites = if step.a == 0 {
            h_zero_sites(&w, max)
        } else {
            h_one_sites(&w, max)
        };
        w.insert(sites[step.b - 1], max + 1);
    }
    Ok(Permutation::from_vec_unchecked(w))
}

/// Recovers the encoding of `p` under [`bij_h`].
pub fn bij_h_inv(p: &Permutation) -> InsertionEncoding {
    let mut w = p.letters().to_vec();
    let mut steps = Vec::with_capacity(p.len().saturating_sub(1));
    for letter in (2..=p.len() as u32).rev() {
        let pos = w.iter().position(|&x| x == letter).expect("letter present");
        w.remove(pos);
        let max = letter - 1;
        let step = match h_zero_sites(&w, max).iter().position(|&x| x == pos) {
            Some(k) => Step { a: 0, b: k + 1 },
            None => {
                let k = h_one_sites(&w, max)
                    .iter()
                    .position(|&x| x == pos)
                    .expect("every position is an insertion site");
                Step { a: 1, b: k + 1 }
            }
        };
        steps.push(step);
    }
    steps.reverse();
    InsertionEncoding { steps }
}

/// `h(g^{-1}(p))`: carries flattened descents of `p` to big descents.
pub fn transport(p: &Permutation) -> Permutation {
    bij_h(&bij_g_inv(p)).expect("g inverse yields a valid encoding")
}

/// Every valid encoding of length `n - 1`, in lexicographic order.
pub fn all_encodings(n: usize) -> Vec<InsertionEncoding> {
    fn extend(prefix: &mut Vec<Step>, s: usize, len: usize, out: &mut Vec<InsertionEncoding>) {
        let i = prefix.len() + 1;
        if i > len {
            out.push(InsertionEncoding {
                steps: prefix.clone(),
            });
            return;
        }
        for b in 1..=s + 2 {
            prefix.push(Step { a: 0, b });
            extend(prefix, s, len, out);
            prefix.pop();
        }
        for b in 1..=(i - 1 - s.min(i - 1)) {
            prefix.push(Step { a: 1, b });
            extend(prefix, s + 1, len, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 0, n.saturating_sub(1), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::perm::{count_stat, iterate_sym, StatKind, Statistic};

    fn worked() -> InsertionEncoding {
        "0,2;1,1;0,3;1,2;0,3;1,1;0,5".parse().unwrap()
    }

    #[test]
    fn worked_example() {
        let e = worked();
        assert!(e.validate());
        assert_eq!(e.to_string(), "0,2;1,1;0,3;1,2;0,3;1,1;0,5");
        assert_eq!(bij_g(&e).unwrap().to_string(), "(1 7 3)(2 5)(4 6)(8)");
        let rho: Permutation = "73165248".parse().unwrap();
        assert_eq!(bij_h(&e).unwrap(), rho);
        let sigma: Permutation = "75162438".parse().unwrap();
        assert_eq!(bij_g_inv(&sigma), e);
        assert_eq!(bij_h_inv(&rho), e);
        assert_eq!(transport(&sigma), rho);
        assert_eq!(transport(&sigma).to_string(), "7,3,1,6,5,2,4,8");
    }

    #[test]
    fn validation() {
        assert!(!InsertionEncoding::new(&[(1, 1)]).validate());
        assert!(!InsertionEncoding::new(&[(0, 2), (1, 2)]).validate());
        assert!(!InsertionEncoding::new(&[(0, 3)]).validate());
        assert!(!InsertionEncoding::new(&[(2, 1)]).validate());
        assert!(bij_g(&InsertionEncoding::new(&[(0, 0)])).is_err());
        assert!("0,1;x".parse::<InsertionEncoding>().is_err());
        assert!("0;1".parse::<InsertionEncoding>().is_err());
        assert_eq!("".parse::<InsertionEncoding>().unwrap().n(), 1);
    }

    #[test]
    fn trivial_encodings() {
        let new_cycles = InsertionEncoding::new(&[(0, 2); 5]);
        assert_eq!(
            bij_g(&new_cycles).unwrap().to_permutation(),
            Permutation::identity(6)
        );
        assert_eq!(bij_h(&new_cycles).unwrap(), Permutation::identity(6));
        assert_eq!(
            transport(&Permutation::identity(5)),
            Permutation::identity(5)
        );
    }

    #[test]
    fn encoding_counts() {
        let mut fact = 1;
        for n in 1..=8 {
            fact *= n;
            let all = all_encodings(n);
            assert_eq!(all.len(), fact, "n={n}");
            assert!(all.iter().all(InsertionEncoding::validate));
        }
    }

    #[test]
    fn statistics_are_carried() {
        for n in 1..=7 {
            for e in all_encodings(n) {
                let g = bij_g(&e).unwrap().to_permutation();
                let h = bij_h(&e).unwrap();
                assert_eq!(
                    count_stat(&g, Statistic::flattened(StatKind::Des)),
                    e.ones()
                );
                assert_eq!(count_stat(&h, Statistic::plain(StatKind::BigDes)), e.ones());
            }
        }
    }

    #[test]
    fn round_trips_on_s6() {
        for p in iterate_sym(6, 10).unwrap() {
            let eg = bij_g_inv(&p);
            assert_eq!(bij_g(&eg).unwrap().to_permutation(), p);
            let eh = bij_h_inv(&p);
            assert_eq!(bij_h(&eh).unwrap(), p);
        }
    }

    #[test]
    fn transport_is_a_bijection() {
        for n in 1..=7 {
            let mut image = HashSet::new();
            for p in iterate_sym(n, 10).unwrap() {
                let t = transport(&p);
                assert_eq!(
                    count_stat(&p, Statistic::flattened(StatKind::Des)),
                    count_stat(&t, Statistic::plain(StatKind::BigDes))
                );
                image.insert(t);
            }
            assert_eq!(image.len(), (1..=n).product::<usize>());
        }
    }
}
