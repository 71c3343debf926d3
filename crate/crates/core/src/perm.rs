//! Permutations in one-line and standard cycle form, flattening, and
//! consecutive-pattern statistics on words.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Default largest `n` accepted by exhaustive enumeration.
pub const DEFAULT_MAX_N: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("empty input")]
    Empty,
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("cycles are not in standard order: {0}")]
    NonStandardOrder(String),
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
}

/// A permutation of `1..=n` in one-line (word) form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    letters: Vec<u32>,
}

impl Permutation {
    pub fn new(letters: Vec<u32>) -> Result<Self, PermError> {
        if letters.is_empty() {
            return Err(PermError::Empty);
        }
        let n = letters.len();
        let mut seen = vec![false; n + 1];
        for &v in &letters {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return Err(PermError::NotAPermutation(join(&letters, ",")));
            }
            seen[v] = true;
        }
        Ok(Permutation { letters })
    }

    pub(crate) fn from_vec_unchecked(letters: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(letters.clone()).is_ok());
        Permutation { letters }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            letters: (1..=n as u32).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    /// Image of `i` (1-based).
    pub fn apply(&self, i: u32) -> u32 {
        self.letters[i as usize - 1]
    }

    pub fn standard_cycle_form(&self) -> CycleForm {
        CycleForm {
            cycles: cycles_of(&self.letters),
        }
    }

    /// The word obtained by erasing the parentheses of the standard cycle form.
    pub fn flattened(&self) -> Permutation {
        Permutation {
            letters: flatten_word(&self.letters),
        }
    }

    pub fn count(&self, st: Statistic) -> usize {
        if st.flattened {
            count_on_word(&flatten_word(&self.letters), st.kind)
        } else {
            count_on_word(&self.letters, st.kind)
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.letters, ","))
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s)
    }
}

/// Cycle notation with each cycle led by its minimum and cycles sorted by
/// increasing minima.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycleForm {
    cycles: Vec<Vec<u32>>,
}

impl CycleForm {
    /// Accepts cycles only if they already are in standard form.
    pub fn new(cycles: Vec<Vec<u32>>) -> Result<Self, PermError> {
        check_cycle_support(&cycles)?;
        let mut prev_min = 0;
        for c in &cycles {
            let min = *c.iter().min().expect("nonempty");
            if c[0] != min || min <= prev_min {
                return Err(PermError::NonStandardOrder(render_cycles(&cycles)));
            }
            prev_min = min;
        }
        Ok(CycleForm { cycles })
    }

    /// Rotates each cycle to start at its minimum and sorts cycles by minimum.
    pub fn normalized(mut cycles: Vec<Vec<u32>>) -> Result<Self, PermError> {
        check_cycle_support(&cycles)?;
        for c in cycles.iter_mut() {
            let pos = c
                .iter()
                .enumerate()
                .min_by_key(|(_, v)| **v)
                .map(|(i, _)| i)
                .expect("nonempty");
            c.rotate_left(pos);
        }
        cycles.sort_by_key(|c| c[0]);
        Ok(CycleForm { cycles })
    }

    pub(crate) fn from_cycles_unchecked(cycles: Vec<Vec<u32>>) -> Self {
        CycleForm { cycles }
    }

    pub fn cycles(&self) -> &[Vec<u32>] {
        &self.cycles
    }

    pub fn len(&self) -> usize {
        self.cycles.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn num_cycles(&self) -> usize {
        self.cycles.len()
    }

    pub fn flatten(&self) -> Permutation {
        Permutation {
            letters: self.cycles.concat(),
        }
    }

    /// Reads the cycles as the function `c_i -> c_{i+1}`.
    pub fn to_permutation(&self) -> Permutation {
        let mut letters = vec![0u32; self.len()];
        for c in &self.cycles {
            for (i, &v) in c.iter().enumerate() {
                letters[v as usize - 1] = c[(i + 1) % c.len()];
            }
        }
        Permutation { letters }
    }
}

impl fmt::Display for CycleForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_cycles(&self.cycles))
    }
}

fn check_cycle_support(cycles: &[Vec<u32>]) -> Result<(), PermError> {
    if cycles.is_empty() {
        return Err(PermError::Empty);
    }
    if cycles.iter().any(Vec::is_empty) {
        return Err(PermError::Malformed("empty cycle".into()));
    }
    let n: usize = cycles.iter().map(Vec::len).sum();
    let mut seen = vec![false; n + 1];
    for &v in cycles.iter().flatten() {
        let v = v as usize;
        if v == 0 || v > n || seen[v] {
            return Err(PermError::NotAPermutation(render_cycles(cycles)));
        }
        seen[v] = true;
    }
    Ok(())
}

fn render_cycles(cycles: &[Vec<u32>]) -> String {
    cycles
        .iter()
        .map(|c| format!("({})", join(c, " ")))
        .collect()
}

fn join(v: &[u32], sep: &str) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

/// Standard cycle decomposition of a word given in one-line form.
pub(crate) fn cycles_of(letters: &[u32]) -> Vec<Vec<u32>> {
    let n = letters.len();
    let mut seen = vec![false; n + 1];
    let mut cycles = Vec::new();
    for start in 1..=n {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            cycle.push(j as u32);
            j = letters[j - 1] as usize;
        }
        cycles.push(cycle);
    }
    cycles
}

pub(crate) fn flatten_word(letters: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(letters.len());
    flatten_into(letters, &mut out, &mut Vec::new());
    out
}

/// Writes Flatten(letters) into `out` using `seen` as scratch space and
/// returns the number of cycles.
pub(crate) fn flatten_into(letters: &[u32], out: &mut Vec<u32>, seen: &mut Vec<bool>) -> usize {
    let n = letters.len();
    out.clear();
    seen.clear();
    seen.resize(n + 1, false);
    let mut cycles = 0;
    for start in 1..=n {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            out.push(j as u32);
            j = letters[j - 1] as usize;
        }
    }
    cycles
}

/// The kind of adjacency pattern counted by a [`Statistic`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StatKind {
    Des,
    Asc,
    BigDes,
    /// `w_i - w_{i+1} >= d`, with `d >= 1`.
    DDes(u32),
    Sub123,
    Sub321,
    Peak,
    Valley,
}

impl StatKind {
    pub fn name(&self) -> String {
        match self {
            StatKind::Des => "des".into(),
            StatKind::Asc => "asc".into(),
            StatKind::BigDes => "bigdes".into(),
            StatKind::DDes(d) => format!("ddes{d}"),
            StatKind::Sub123 => "123".into(),
            StatKind::Sub321 => "321".into(),
            StatKind::Peak => "peak".into(),
            StatKind::Valley => "valley".into(),
        }
    }

    /// Length of the consecutive pattern (2 or 3).
    pub fn pattern_len(&self) -> usize {
        match self {
            StatKind::Des | StatKind::Asc | StatKind::BigDes | StatKind::DDes(_) => 2,
            _ => 3,
        }
    }

    pub fn is_length_three(&self) -> bool {
        self.pattern_len() == 3
    }
}

impl fmt::Display for StatKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A statistic read either on Flatten(π) or on the word of π itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Statistic {
    pub kind: StatKind,
    pub flattened: bool,
}

impl Statistic {
    pub fn flattened(kind: StatKind) -> Self {
        assert_valid_kind(kind);
        Statistic {
            kind,
            flattened: true,
        }
    }

    pub fn plain(kind: StatKind) -> Self {
        assert_valid_kind(kind);
        Statistic {
            kind,
            flattened: false,
        }
    }
}

fn assert_valid_kind(kind: StatKind) {
    if let StatKind::DDes(d) = kind {
        assert!(d >= 1, "d-descents require d >= 1");
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.flattened {
            write!(f, "{}", self.kind)
        } else {
            write!(f, "{}(plain)", self.kind)
        }
    }
}

/// Counts (possibly overlapping) occurrences of `kind` in `w`.
pub fn count_on_word(w: &[u32], kind: StatKind) -> usize {
    let pairs = || w.windows(2).map(|p| (p[0] as i64, p[1] as i64));
    let triples = || w.windows(3).map(|t| (t[0], t[1], t[2]));
    match kind {
        StatKind::Des => pairs().filter(|(a, b)| a > b).count(),
        StatKind::Asc => pairs().filter(|(a, b)| a < b).count(),
        StatKind::BigDes => pairs().filter(|(a, b)| a - b >= 2).count(),
        StatKind::DDes(d) => pairs().filter(|(a, b)| a - b >= d as i64).count(),
        StatKind::Sub123 => triples().filter(|(a, b, c)| a < b && b < c).count(),
        StatKind::Sub321 => triples().filter(|(a, b, c)| a > b && b > c).count(),
        StatKind::Peak => triples().filter(|(a, b, c)| b > a && b > c).count(),
        StatKind::Valley => triples().filter(|(a, b, c)| b < a && b < c).count(),
    }
}

pub fn standard_cycle_form(p: &Permutation) -> CycleForm {
    p.standard_cycle_form()
}

pub fn flatten(c: &CycleForm) -> Permutation {
    c.flatten()
}

pub fn count_stat(w: &Permutation, st: Statistic) -> usize {
    w.count(st)
}

/// Lexicographic enumeration of all words of length `n` that begin with a
/// fixed prefix.
#[derive(Debug, Clone)]
pub struct SymIter {
    prefix_len: usize,
    current: Vec<u32>,
    done: bool,
}

impl SymIter {
    fn with_prefix_unchecked(n: usize, prefix: &[u32]) -> Self {
        let mut current = prefix.to_vec();
        let used: Vec<bool> = (0..=n as u32).map(|v| prefix.contains(&v)).collect();
        current.extend((1..=n as u32).filter(|v| !used[*v as usize]));
        SymIter {
            prefix_len: prefix.len(),
            current,
            done: n == 0,
        }
    }
}

impl Iterator for SymIter {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let out = Permutation {
            letters: self.current.clone(),
        };
        self.done = !next_permutation(&mut self.current[self.prefix_len..]);
        Some(out)
    }
}

/// In-place lexicographic successor; false when `v` was the last one.
pub(crate) fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All `n!` permutations of length `n` in lexicographic order.
pub fn iterate_sym(n: usize, max_n: usize) -> Result<SymIter, PermError> {
    iterate_sym_with_prefix(n, &[], max_n)
}

/// Permutations of length `n` whose word starts with `prefix`, in
/// lexicographic order. Concatenating the iterators of all prefixes of a
/// fixed length, taken in lexicographic order, reproduces [`iterate_sym`].
pub fn iterate_sym_with_prefix(
    n: usize,
    prefix: &[u32],
    max_n: usize,
) -> Result<SymIter, PermError> {
    if n > max_n {
        return Err(PermError::CapExceeded { n, cap: max_n });
    }
    if n == 0 {
        return Err(PermError::Empty);
    }
    let mut seen = vec![false; n + 1];
    for &v in prefix {
        if v == 0 || v as usize > n || seen[v as usize] {
            return Err(PermError::NotAPermutation(join(prefix, ",")));
        }
        seen[v as usize] = true;
    }
    Ok(SymIter::with_prefix_unchecked(n, prefix))
}

/// All sequences of `len` distinct values from `1..=n`, lexicographically.
pub fn prefixes(n: usize, len: usize) -> Vec<Vec<u32>> {
    fn rec(n: usize, len: usize, cur: &mut Vec<u32>, used: &mut [bool], out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in 1..=n {
            if !used[v] {
                used[v] = true;
                cur.push(v as u32);
                rec(n, len, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(
        n,
        len.min(n),
        &mut Vec::new(),
        &mut vec![false; n + 1],
        &mut out,
    );
    out
}

/// Either form accepted by [`parse_permutation`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parsed {
    Word(Permutation),
    Cycles(CycleForm),
}

impl Parsed {
    pub fn into_permutation(self) -> Permutation {
        match self {
            Parsed::Word(p) => p,
            Parsed::Cycles(c) => c.to_permutation(),
        }
    }
}

/// Parses `"7,5,1,6,2,4,3,8"`, the compact `"75162438"` (single-digit
/// letters only) or `"(1 7 3)(2 5)(4 6)(8)"`. In strict mode
/// cycle input must already be in standard form.
pub fn parse_permutation(text: &str, lenient: bool) -> Result<Parsed, PermError> {
    let t = text.trim();
    if t.starts_with('(') {
        let cycles = parse_cycle_groups(t)?;
        let c = if lenient {
            CycleForm::normalized(cycles)?
        } else {
            CycleForm::new(cycles)?
        };
        Ok(Parsed::Cycles(c))
    } else {
        parse_word(t).map(Parsed::Word)
    }
}

fn parse_word(text: &str) -> Result<Permutation, PermError> {
    let t = text.trim();
    if t.is_empty() {
        return Err(PermError::Empty);
    }
    if !t.contains(',') && t.len() > 1 && t.bytes().all(|b| b.is_ascii_digit()) {
        return Permutation::new(t.bytes().map(|b| u32::from(b - b'0')).collect());
    }
    let letters = t
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| PermError::Malformed(format!("bad letter {s:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Permutation::new(letters)
}

fn parse_cycle_groups(text: &str) -> Result<Vec<Vec<u32>>, PermError> {
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let inner = rest
            .strip_prefix('(')
            .ok_or_else(|| PermError::Malformed(format!("expected '(' at {rest:?}")))?;
        let close = inner
            .find(')')
            .ok_or_else(|| PermError::Malformed("unclosed cycle".into()))?;
        let body = &inner[..close];
        if body.contains('(') {
            return Err(PermError::Malformed("nested parenthesis".into()));
        }
        let cycle = body
            .split_whitespace()
            .map(|s| {
                s.parse::<u32>()
                    .map_err(|_| PermError::Malformed(format!("bad letter {s:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if cycle.is_empty() {
            return Err(PermError::Malformed("empty cycle".into()));
        }
        cycles.push(cycle);
        rest = inner[close + 1..].trim_start();
    }
    if cycles.is_empty() {
        return Err(PermError::Empty);
    }
    Ok(cycles)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Permutation {
        Permutation::new(s.chars().map(|c| c.to_digit(10).unwrap()).collect()).unwrap()
    }

    #[test]
    fn cycle_forms_of_known_words() {
        assert_eq!(
            w("75162438").standard_cycle_form().to_string(),
            "(1 7 3)(2 5)(4 6)(8)"
        );
        assert_eq!(
            w("71564328").standard_cycle_form().to_string(),
            "(1 7 2)(3 5 4 6)(8)"
        );
        assert_eq!(w("123").standard_cycle_form().to_string(), "(1)(2)(3)");
    }

    #[test]
    fn flatten_examples() {
        assert_eq!(w("71564328").flattened(), w("17235468"));
        let c = CycleForm::new(vec![vec![1], vec![2], vec![3]]).unwrap();
        assert_eq!(c.flatten(), w("123"));
        let f = w("75162438").flattened();
        assert_eq!(f, w("17325468"));
        assert_eq!(count_on_word(f.letters(), StatKind::Des), 3);
    }

    #[test]
    fn counts_on_words() {
        let c = CycleForm::new(vec![vec![1, 9, 8, 5], vec![2, 4], vec![3, 6, 7]]).unwrap();
        let f = c.flatten();
        assert_eq!(f.letters(), &[1, 9, 8, 5, 2, 4, 3, 6, 7]);
        assert_eq!(count_on_word(f.letters(), StatKind::DDes(3)), 2);
        assert_eq!(count_on_word(f.letters(), StatKind::Des), 4);
        assert_eq!(count_on_word(w("1247653").letters(), StatKind::Sub321), 2);
        assert_eq!(count_on_word(w("123").letters(), StatKind::Valley), 0);
        assert_eq!(count_on_word(w("132").letters(), StatKind::Peak), 1);
        assert_eq!(count_on_word(&[1], StatKind::Peak), 0);
        assert_eq!(count_on_word(&[2, 1], StatKind::Sub321), 0);
    }

    #[test]
    fn flattened_statistic_reads_cycle_form() {
        let p = w("75162438");
        assert_eq!(p.count(Statistic::flattened(StatKind::Des)), 3);
        assert_eq!(p.count(Statistic::plain(StatKind::Des)), 4);
    }

    #[test]
    fn enumeration_sizes_and_order() {
        assert_eq!(iterate_sym(1, 10).unwrap().count(), 1);
        let s3: Vec<_> = iterate_sym(3, 10).unwrap().collect();
        assert_eq!(s3.len(), 6);
        assert!(s3.windows(2).all(|p| p[0] < p[1]));
        let s8: std::collections::HashSet<_> = iterate_sym(8, 10).unwrap().collect();
        assert_eq!(s8.len(), 40320);
        assert_eq!(
            iterate_sym(11, 10).unwrap_err(),
            PermError::CapExceeded { n: 11, cap: 10 }
        );
    }

    #[test]
    fn prefix_partition_concatenates_to_full_enumeration() {
        let full: Vec<_> = iterate_sym(5, 10).unwrap().collect();
        let parts: Vec<_> = prefixes(5, 3)
            .iter()
            .flat_map(|p| iterate_sym_with_prefix(5, p, 10).unwrap())
            .collect();
        assert_eq!(full, parts);
    }

    #[test]
    fn exhaustive_flatten_and_round_trip() {
        for n in 1..=8 {
            for p in iterate_sym(n, 10).unwrap() {
                let c = p.standard_cycle_form();
                assert_eq!(c.flatten().letters()[0], 1);
                assert_eq!(c.to_permutation(), p);
                assert_eq!(CycleForm::new(c.cycles().to_vec()).unwrap(), c);
            }
        }
    }

    #[test]
    fn parsing() {
        assert_eq!(
            parse_permutation("7,5,1,6,2,4,3,8", false).unwrap(),
            Parsed::Word(w("75162438"))
        );
        let c = parse_permutation("(1 7 3)(2 5)(4 6)(8)", false).unwrap();
        assert_eq!(c.into_permutation(), w("75162438"));
        assert!(matches!(
            parse_permutation("(2 5)(1 7 3)(4 6)(8)", false),
            Err(PermError::NonStandardOrder(_))
        ));
        let lenient = parse_permutation("(5 2)(7 3 1)(6 4)(8)", true).unwrap();
        assert_eq!(
            lenient,
            Parsed::Cycles(
                CycleForm::new(vec![vec![1, 7, 3], vec![2, 5], vec![4, 6], vec![8]]).unwrap()
            )
        );
        assert!(matches!(
            parse_permutation("1,1,2", false),
            Err(PermError::NotAPermutation(_))
        ));
        assert_eq!(
            parse_permutation("75162438", false)
                .unwrap()
                .into_permutation(),
            w("75162438")
        );
        assert!(matches!(
            parse_permutation("1,x", false),
            Err(PermError::Malformed(_))
        ));
        assert!(matches!(
            parse_permutation("(1 2", false),
            Err(PermError::Malformed(_))
        ));
        assert!(matches!(
            parse_permutation("(1 2)(4)", false),
            Err(PermError::NotAPermutation(_))
        ));
        assert!(matches!(
            parse_permutation("", false),
            Err(PermError::Empty)
        ));
    }
}
