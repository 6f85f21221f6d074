//! Group arithmetic for Coxeter types A and B.
//!
//! Type A of degree `m` is the symmetric group `S_m` (Coxeter rank `m - 1`);
//! type B of degree `n` is the hyperoctahedral group of signed permutations of
//! `n` letters (rank `n`). Elements are stored in one-line notation as the
//! images of `1..=degree`; a signed permutation is determined by these since
//! `w(-i) = -w(i)`.
//!
//! Products apply the right factor first: `a * b` means "do `b`, then `a`",
//! so a word `t_1 t_2 ... t_k` acts by `t_k` first and its prefixes read
//! left-to-right. With this convention `(1,2)(2,3) = (1,2,3)` in `S_3` and the
//! fixed Coxeter elements factor into simple reflections in natural order.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::{Budget, Error, Result};

/// The two Coxeter families implemented here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    B,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A => write!(f, "A"),
            Family::B => write!(f, "B"),
        }
    }
}

/// A concrete group: family plus degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CoxeterSpec {
    family: Family,
    degree: u8,
}

impl CoxeterSpec {
    /// The symmetric group `S_m`, `m >= 2`.
    pub fn type_a(m: u8) -> Result<Self> {
        if m < 2 {
            return Err(Error::Usage(format!("type A needs degree >= 2, got {m}")));
        }
        Ok(CoxeterSpec { family: Family::A, degree: m })
    }

    /// The signed permutations of `n` letters, `n >= 2`.
    pub fn type_b(n: u8) -> Result<Self> {
        if n < 2 {
            return Err(Error::Usage(format!("type B needs degree >= 2, got {n}")));
        }
        Ok(CoxeterSpec { family: Family::B, degree: n })
    }

    pub fn new(family: Family, degree: u8) -> Result<Self> {
        match family {
            Family::A => CoxeterSpec::type_a(degree),
            Family::B => CoxeterSpec::type_b(degree),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    /// Coxeter rank: `m - 1` for `S_m`, `n` for `B_n`. This is also the
    /// reflection length of the fixed Coxeter element.
    pub fn rank(&self) -> usize {
        match self.family {
            Family::A => self.degree as usize - 1,
            Family::B => self.degree as usize,
        }
    }

    pub fn group_order(&self) -> u64 {
        let d = self.degree as u64;
        let fact: u64 = (1..=d).product();
        match self.family {
            Family::A => fact,
            Family::B => fact << d,
        }
    }

    pub fn identity(&self) -> Element {
        Element {
            spec: *self,
            images: (1..=self.degree as i8).collect(),
        }
    }

    /// The fixed Coxeter element: the long cycle `(1, 2, ..., m)` in type A,
    /// the signed cycle `[1, ..., n]` (`i -> i+1`, `n -> -1`) in type B.
    pub fn coxeter_element(&self) -> Element {
        let d = self.degree as i8;
        let mut images: Vec<i8> = (2..=d).collect();
        match self.family {
            Family::A => images.push(1),
            Family::B => images.push(-1),
        }
        Element { spec: *self, images }
    }

    /// All reflections in canonical order: transpositions `(i, j)` sorted
    /// lexicographically in type A; in type B the sign flips `[1], ..., [n]`
    /// followed by the paired transpositions `<<i, j>>`, `<<i, -j>>` sorted by
    /// `(i, |j|, sign)`.
    pub fn all_reflections(&self) -> Vec<Reflection> {
        let d = self.degree;
        let mut out = Vec::new();
        match self.family {
            Family::A => {
                for i in 1..=d {
                    for j in i + 1..=d {
                        out.push(Reflection { spec: *self, kind: ReflKind::Transposition(i, j) });
                    }
                }
            }
            Family::B => {
                for i in 1..=d {
                    out.push(Reflection { spec: *self, kind: ReflKind::Flip(i) });
                }
                for i in 1..=d {
                    for j in i + 1..=d {
                        out.push(Reflection { spec: *self, kind: ReflKind::Paired(i, j as i8) });
                        out.push(Reflection { spec: *self, kind: ReflKind::Paired(i, -(j as i8)) });
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Every group element, sorted lexicographically on one-line notation.
    pub fn all_elements(&self) -> Vec<Element> {
        let d = self.degree as usize;
        let mut out = Vec::with_capacity(self.group_order() as usize);
        for perm in (1..=self.degree as i8).permutations(d) {
            match self.family {
                Family::A => out.push(Element { spec: *self, images: perm }),
                Family::B => {
                    for mask in 0u32..(1 << d) {
                        let images = perm
                            .iter()
                            .enumerate()
                            .map(|(k, &v)| if mask >> k & 1 == 1 { -v } else { v })
                            .collect();
                        out.push(Element { spec: *self, images });
                    }
                }
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for CoxeterSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.degree)
    }
}

/// A (signed) permutation in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    spec: CoxeterSpec,
    images: Vec<i8>,
}

impl Element {
    /// Build from the images of `1..=degree`, validating the (signed)
    /// permutation condition.
    pub fn from_images(spec: CoxeterSpec, images: &[i8]) -> Result<Self> {
        let d = spec.degree as usize;
        if images.len() != d {
            return Err(Error::Usage(format!(
                "expected {d} images for {spec}, got {}",
                images.len()
            )));
        }
        let mut seen = vec![false; d];
        for &v in images {
            let a = v.unsigned_abs() as usize;
            if v == 0 || a > d || seen[a - 1] {
                return Err(Error::Usage(format!("invalid one-line notation {images:?}")));
            }
            if v < 0 && spec.family == Family::A {
                return Err(Error::Usage("type A images must be positive".into()));
            }
            seen[a - 1] = true;
        }
        Ok(Element { spec, images: images.to_vec() })
    }

    pub fn spec(&self) -> CoxeterSpec {
        self.spec
    }

    /// One-line notation: the images of `1..=degree`.
    pub fn images(&self) -> &[i8] {
        &self.images
    }

    /// Image of a signed point (`w(-i) = -w(i)`).
    pub fn apply(&self, x: i8) -> i8 {
        if x > 0 {
            self.images[x as usize - 1]
        } else {
            -self.images[(-x) as usize - 1]
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i as i8 + 1)
    }

    /// Group product `self * other` with `other` applied first.
    pub fn compose(&self, other: &Element) -> Result<Element> {
        if self.spec != other.spec {
            return Err(Error::Usage(format!(
                "spec mismatch: {} vs {}",
                self.spec, other.spec
            )));
        }
        Ok(self.times(other))
    }

    /// Internal unchecked product; callers guarantee equal specs.
    pub(crate) fn times(&self, other: &Element) -> Element {
        debug_assert_eq!(self.spec, other.spec);
        let images = (1..=self.spec.degree as i8)
            .map(|x| self.apply(other.apply(x)))
            .collect();
        Element { spec: self.spec, images }
    }

    pub fn inverse(&self) -> Element {
        let mut images = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            let x = i as i8 + 1;
            if v > 0 {
                images[v as usize - 1] = x;
            } else {
                images[(-v) as usize - 1] = -x;
            }
        }
        Element { spec: self.spec, images }
    }

    /// Reflection length: the rank over the rationals of `M - I` for the
    /// (signed) permutation matrix `M`. This equals the minimal number of
    /// reflections multiplying to the element.
    pub fn reflection_length(&self) -> usize {
        let d = self.images.len();
        let mut m = vec![vec![0i64; d]; d];
        for (col, &v) in self.images.iter().enumerate() {
            let row = v.unsigned_abs() as usize - 1;
            m[row][col] += v.signum() as i64;
        }
        for (i, row) in m.iter_mut().enumerate() {
            row[i] -= 1;
        }
        int_rank(m)
    }

    /// Absolute order: `self <= w` iff reflection length adds along the pair,
    /// `l(w) = l(self) + l(self^{-1} w)`.
    pub fn absolute_leq(&self, w: &Element) -> Result<bool> {
        if self.spec != w.spec {
            return Err(Error::Usage(format!(
                "spec mismatch: {} vs {}",
                self.spec, w.spec
            )));
        }
        let quot = self.inverse().times(w);
        Ok(w.reflection_length() == self.reflection_length() + quot.reflection_length())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.images.iter().join(","))
    }
}

/// Reflection kinds. Type A has transpositions `(i, j)`; type B has paired
/// transpositions `<<i, j>>` (with `j` possibly negative, `1 <= i < |j|`) and
/// sign flips `[i]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReflKind {
    Transposition(u8, u8),
    Paired(u8, i8),
    Flip(u8),
}

/// A reflection, i.e. a conjugate of a simple generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Reflection {
    spec: CoxeterSpec,
    kind: ReflKind,
}

impl Reflection {
    pub fn transposition(spec: CoxeterSpec, i: u8, j: u8) -> Result<Self> {
        if spec.family != Family::A || i == 0 || i >= j || j > spec.degree {
            return Err(Error::Usage(format!("invalid transposition ({i},{j}) for {spec}")));
        }
        Ok(Reflection { spec, kind: ReflKind::Transposition(i, j) })
    }

    pub fn paired(spec: CoxeterSpec, i: u8, j: i8) -> Result<Self> {
        if spec.family != Family::B || i == 0 || i as i8 >= j.abs() || j.unsigned_abs() > spec.degree {
            return Err(Error::Usage(format!("invalid paired transposition <<{i},{j}>> for {spec}")));
        }
        Ok(Reflection { spec, kind: ReflKind::Paired(i, j) })
    }

    pub fn flip(spec: CoxeterSpec, i: u8) -> Result<Self> {
        if spec.family != Family::B || i == 0 || i > spec.degree {
            return Err(Error::Usage(format!("invalid sign flip [{i}] for {spec}")));
        }
        Ok(Reflection { spec, kind: ReflKind::Flip(i) })
    }

    pub fn spec(&self) -> CoxeterSpec {
        self.spec
    }

    pub fn kind(&self) -> ReflKind {
        self.kind
    }

    pub fn to_element(&self) -> Element {
        let mut e = self.spec.identity();
        match self.kind {
            ReflKind::Transposition(i, j) => {
                e.images.swap(i as usize - 1, j as usize - 1);
            }
            ReflKind::Paired(i, j) => {
                // i -> j and j -> i as signed points.
                let a = i as usize - 1;
                let b = j.unsigned_abs() as usize - 1;
                if j > 0 {
                    e.images.swap(a, b);
                } else {
                    e.images[a] = j;
                    e.images[b] = -(i as i8);
                }
            }
            ReflKind::Flip(i) => {
                e.images[i as usize - 1] = -(i as i8);
            }
        }
        e
    }

    /// Recognize a reflection from its one-line notation.
    pub fn from_element(e: &Element) -> Option<Reflection> {
        let moved: Vec<u8> = (1..=e.spec.degree)
            .filter(|&i| e.images[i as usize - 1] != i as i8)
            .collect();
        let kind = match (e.spec.family, moved.as_slice()) {
            (Family::A, &[i, j]) if e.apply(i as i8) == j as i8 && e.apply(j as i8) == i as i8 => {
                ReflKind::Transposition(i, j)
            }
            (Family::B, &[i]) if e.apply(i as i8) == -(i as i8) => ReflKind::Flip(i),
            (Family::B, &[i, j]) => {
                let v = e.apply(i as i8);
                if v.unsigned_abs() == j && e.apply(v) == i as i8 {
                    ReflKind::Paired(i, v)
                } else {
                    return None;
                }
            }
            _ => return None,
        };
        Some(Reflection { spec: e.spec, kind })
    }

    /// The positive root attached to the reflection: `e_i - e_j` for `(i,j)`
    /// and `<<i,j>>`, `e_i + e_j` for `<<i,-j>>`, `e_i` for `[i]`.
    pub fn root(&self) -> Root {
        let d = self.spec.degree as usize;
        let mut coords = vec![0i8; d];
        match self.kind {
            ReflKind::Transposition(i, j) => {
                coords[i as usize - 1] = 1;
                coords[j as usize - 1] = -1;
            }
            ReflKind::Paired(i, j) => {
                coords[i as usize - 1] = 1;
                coords[j.unsigned_abs() as usize - 1] = if j > 0 { -1 } else { 1 };
            }
            ReflKind::Flip(i) => coords[i as usize - 1] = 1,
        }
        Root { coords }
    }

    fn sort_key(&self) -> (u8, u8, u8, u8, u8) {
        let fam = match self.spec.family {
            Family::A => 0,
            Family::B => 1,
        };
        match self.kind {
            ReflKind::Transposition(i, j) => (fam, 1, i, j, 0),
            ReflKind::Flip(i) => (fam, 0, i, 0, 0),
            ReflKind::Paired(i, j) => (fam, 1, i, j.unsigned_abs(), (j < 0) as u8),
        }
    }
}

impl PartialOrd for Reflection {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Reflection {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for Reflection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ReflKind::Transposition(i, j) => write!(f, "({i},{j})"),
            ReflKind::Paired(i, j) => write!(f, "<<{i},{j}>>"),
            ReflKind::Flip(i) => write!(f, "[{i}]"),
        }
    }
}

/// An integer root vector in `Z^degree`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Root {
    pub coords: Vec<i8>,
}

/// A reduced reflection factorization: the letters multiply (right factor
/// first) to an element whose reflection length equals the word length.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedWord {
    spec: CoxeterSpec,
    letters: Vec<Reflection>,
}

impl ReducedWord {
    pub fn new(spec: CoxeterSpec, letters: Vec<Reflection>) -> Result<Self> {
        if letters.iter().any(|t| t.spec != spec) {
            return Err(Error::Usage("word letters must share one spec".into()));
        }
        if !is_reduced(&letters) {
            return Err(Error::Usage("word is not reduced".into()));
        }
        Ok(ReducedWord { spec, letters })
    }

    pub fn spec(&self) -> CoxeterSpec {
        self.spec
    }

    pub fn letters(&self) -> &[Reflection] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The element the word factorizes (right factor acts first).
    pub fn product(&self) -> Element {
        let mut acc = self.spec.identity();
        for t in self.letters.iter().rev() {
            acc = t.to_element().times(&acc);
        }
        acc
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.letters {
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// Carter's criterion: a word of reflections is reduced iff the attached
/// roots are linearly independent over the rationals.
pub fn is_reduced(letters: &[Reflection]) -> bool {
    let rows: Vec<Vec<i64>> = letters
        .iter()
        .map(|t| t.root().coords.iter().map(|&c| c as i64).collect())
        .collect();
    int_rank(rows) == letters.len()
}

/// The roots of a reduced word; a basis of the moved space of its product.
pub fn moved_space_basis(word: &ReducedWord) -> Vec<Root> {
    word.letters.iter().map(Reflection::root).collect()
}

/// All reduced reflection factorizations of `w`, enumerated by recursive
/// peeling of admissible first letters in canonical reflection order (hence
/// in deterministic lexicographic word order). Errors out once more than
/// `budget.max_words` words have been produced.
pub fn reduced_words_of(w: &Element, budget: &Budget) -> Result<Vec<ReducedWord>> {
    let spec = w.spec;
    let reflections = spec.all_reflections();
    let mut lengths: HashMap<Element, usize> = HashMap::new();
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    peel(
        w,
        &reflections,
        &mut lengths,
        &mut prefix,
        &mut out,
        budget.max_words,
    )?;
    Ok(out)
}

fn peel(
    w: &Element,
    reflections: &[Reflection],
    lengths: &mut HashMap<Element, usize>,
    prefix: &mut Vec<Reflection>,
    out: &mut Vec<ReducedWord>,
    cap: u64,
) -> Result<()> {
    let len_w = cached_length(w, lengths);
    if len_w == 0 {
        if out.len() as u64 >= cap {
            return Err(Error::Resource(format!(
                "reduced word enumeration exceeds budget of {cap}"
            )));
        }
        out.push(ReducedWord { spec: w.spec, letters: prefix.clone() });
        return Ok(());
    }
    for &t in reflections {
        // t is an admissible first letter iff l(t^{-1} w) = l(w) - 1.
        let rest = t.to_element().times(w);
        if cached_length(&rest, lengths) == len_w - 1 {
            prefix.push(t);
            peel(&rest, reflections, lengths, prefix, out, cap)?;
            prefix.pop();
        }
    }
    Ok(())
}

fn cached_length(w: &Element, lengths: &mut HashMap<Element, usize>) -> usize {
    if let Some(&l) = lengths.get(w) {
        return l;
    }
    let l = w.reflection_length();
    lengths.insert(w.clone(), l);
    l
}

/// Rank over the rationals of an integer matrix, by fraction-free Gaussian
/// elimination. Entries stay bounded by minors of the input, which is far
/// inside `i64` range for the tiny matrices used here.
pub(crate) fn int_rank(mut m: Vec<Vec<i64>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut col = 0;
    while rank < rows && col < cols {
        let Some(pivot) = (rank..rows).find(|&r| m[r][col] != 0) else {
            col += 1;
            continue;
        };
        m.swap(rank, pivot);
        let (pivot_rows, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &pivot_rows[rank];
        let p = pivot_row[col];
        for row in rest.iter_mut() {
            let factor = row[col];
            if factor != 0 {
                for (c, v) in row.iter_mut().enumerate().skip(col) {
                    *v = *v * p - pivot_row[c] * factor;
                }
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{HashMap, VecDeque};

    fn a(m: u8) -> CoxeterSpec {
        CoxeterSpec::type_a(m).unwrap()
    }

    fn b(n: u8) -> CoxeterSpec {
        CoxeterSpec::type_b(n).unwrap()
    }

    fn t(spec: CoxeterSpec, i: u8, j: u8) -> Reflection {
        Reflection::transposition(spec, i, j).unwrap()
    }

    /// Brute-force reflection lengths of the whole group: BFS over the Cayley
    /// graph generated by all reflections. Independent of the matrix-rank
    /// route this oracle checks.
    fn bfs_lengths(spec: CoxeterSpec) -> HashMap<Element, usize> {
        let gens: Vec<Element> = spec.all_reflections().iter().map(|t| t.to_element()).collect();
        let mut dist = HashMap::new();
        let mut queue = VecDeque::new();
        dist.insert(spec.identity(), 0usize);
        queue.push_back(spec.identity());
        while let Some(w) = queue.pop_front() {
            let d = dist[&w];
            for g in &gens {
                let next = g.times(&w);
                if !dist.contains_key(&next) {
                    dist.insert(next.clone(), d + 1);
                    queue.push_back(next);
                }
            }
        }
        dist
    }

    #[test]
    fn compose_identity_is_neutral() {
        let spec = a(4);
        let c = spec.coxeter_element();
        assert_eq!(spec.identity().compose(&c).unwrap(), c);
        assert_eq!(c.compose(&spec.identity()).unwrap(), c);
    }

    #[test]
    fn compose_applies_right_factor_first() {
        let spec = a(3);
        let s12 = t(spec, 1, 2).to_element();
        let s23 = t(spec, 2, 3).to_element();
        // (12)(23) = (1,2,3): 1 -> 2 -> 3 -> 1.
        assert_eq!(s12.compose(&s23).unwrap().images(), &[2, 3, 1]);
    }

    #[test]
    fn compose_type_b() {
        let spec = b(2);
        let f1 = Reflection::flip(spec, 1).unwrap().to_element();
        let p12 = Reflection::paired(spec, 1, 2).unwrap().to_element();
        // [1] * <<1,2>> with <<1,2>> acting first: 1 -> 2 -> 2, 2 -> 1 -> -1.
        assert_eq!(f1.compose(&p12).unwrap().images(), &[2, -1]);
        // The opposite order gives the other signed 4-cycle.
        assert_eq!(p12.compose(&f1).unwrap().images(), &[-2, 1]);
    }

    #[test]
    fn compose_rejects_spec_mismatch() {
        let x = a(3).identity();
        let y = a(4).identity();
        assert!(matches!(x.compose(&y), Err(Error::Usage(_))));
    }

    #[test]
    fn inverse_composes_to_identity() {
        for spec in [a(4), b(3)] {
            for e in spec.all_elements() {
                assert!(e.compose(&e.inverse()).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn reflection_counts() {
        assert_eq!(a(3).all_reflections().len(), 3);
        assert_eq!(a(4).all_reflections().len(), 6);
        assert_eq!(b(3).all_reflections().len(), 9);
        let kinds = b(3).all_reflections();
        let flips = kinds.iter().filter(|r| matches!(r.kind, ReflKind::Flip(_))).count();
        let pos = kinds
            .iter()
            .filter(|r| matches!(r.kind, ReflKind::Paired(_, j) if j > 0))
            .count();
        let neg = kinds
            .iter()
            .filter(|r| matches!(r.kind, ReflKind::Paired(_, j) if j < 0))
            .count();
        assert_eq!((flips, pos, neg), (3, 3, 3));
    }

    #[test]
    fn reflections_in_canonical_order() {
        let spec = a(3);
        let names: Vec<String> = spec.all_reflections().iter().map(|r| r.to_string()).collect();
        assert_eq!(names, ["(1,2)", "(1,3)", "(2,3)"]);
    }

    #[test]
    fn reflections_square_to_identity() {
        for spec in [a(4), b(3)] {
            for r in spec.all_reflections() {
                let e = r.to_element();
                assert!(e.times(&e).is_identity(), "{r} squared");
                assert_eq!(Reflection::from_element(&e), Some(r));
            }
        }
    }

    #[test]
    fn reflections_equal_conjugacy_closure_of_simples() {
        // T = {w s w^{-1}}: closure of any one reflection's conjugates under
        // the whole group equals all_reflections.
        for spec in [a(4), b(3)] {
            let mut conj: Vec<Element> = Vec::new();
            let simples: Vec<Element> =
                spec.all_reflections().iter().map(|r| r.to_element()).collect();
            for w in spec.all_elements() {
                for s in &simples {
                    let e = w.times(s).times(&w.inverse());
                    if !conj.contains(&e) {
                        conj.push(e);
                    }
                }
            }
            assert_eq!(conj.len(), spec.all_reflections().len());
            for e in conj {
                assert!(Reflection::from_element(&e).is_some());
            }
        }
    }

    #[test]
    fn coxeter_element_images() {
        assert_eq!(a(4).coxeter_element().images(), &[2, 3, 4, 1]);
        assert_eq!(b(3).coxeter_element().images(), &[2, 3, -1]);
    }

    #[test]
    fn coxeter_element_has_full_length() {
        for spec in [a(4), a(5), b(2), b(3), b(4)] {
            assert_eq!(spec.coxeter_element().reflection_length(), spec.rank());
        }
    }

    #[test]
    fn coxeter_element_factors_into_simples() {
        // c = s_1 s_2 ... s_n under the right-factor-first convention.
        let spec = a(4);
        let c = t(spec, 1, 2)
            .to_element()
            .times(&t(spec, 2, 3).to_element())
            .times(&t(spec, 3, 4).to_element());
        assert_eq!(c, spec.coxeter_element());

        let spec = b(3);
        let c = Reflection::paired(spec, 1, 2)
            .unwrap()
            .to_element()
            .times(&Reflection::paired(spec, 2, 3).unwrap().to_element())
            .times(&Reflection::flip(spec, 3).unwrap().to_element());
        assert_eq!(c, spec.coxeter_element());
    }

    #[test]
    fn roots() {
        assert_eq!(t(a(4), 1, 3).root().coords, vec![1, 0, -1, 0]);
        assert_eq!(Reflection::flip(b(3), 2).unwrap().root().coords, vec![0, 1, 0]);
        assert_eq!(Reflection::paired(b(3), 1, -3).unwrap().root().coords, vec![1, 0, 1]);
        assert_eq!(Reflection::paired(b(3), 1, 2).unwrap().root().coords, vec![1, -1, 0]);
    }

    #[test]
    fn reflection_length_basics() {
        assert_eq!(a(5).identity().reflection_length(), 0);
        for r in b(3).all_reflections() {
            assert_eq!(r.to_element().reflection_length(), 1);
        }
        // The 5-cycle in S_5 has length 4 = 5 - #cycles.
        assert_eq!(a(5).coxeter_element().reflection_length(), 4);
    }

    #[test]
    fn reflection_length_matches_brute_force() {
        for spec in [a(5), a(6), b(3), b(4)] {
            let oracle = bfs_lengths(spec);
            for (e, &l) in &oracle {
                assert_eq!(e.reflection_length(), l, "{e}");
            }
            assert_eq!(oracle.len() as u64, spec.group_order());
        }
    }

    #[test]
    fn absolute_leq_examples() {
        let spec = a(4);
        let c = spec.coxeter_element();
        for e in spec.all_elements() {
            assert!(spec.identity().absolute_leq(&e).unwrap());
        }
        let t13 = t(spec, 1, 3).to_element();
        assert!(t13.absolute_leq(&c).unwrap());
    }

    #[test]
    fn absolute_leq_is_partial_order() {
        for spec in [a(4), a(5), b(3)] {
            let elems = spec.all_elements();
            let n = elems.len();
            let mut leq = vec![false; n * n];
            for (i, x) in elems.iter().enumerate() {
                for (j, y) in elems.iter().enumerate() {
                    leq[i * n + j] = x.absolute_leq(y).unwrap();
                }
            }
            for i in 0..n {
                assert!(leq[i * n + i], "reflexivity");
                for j in 0..n {
                    if i != j && leq[i * n + j] {
                        assert!(!leq[j * n + i], "antisymmetry");
                    }
                    if leq[i * n + j] {
                        for k in 0..n {
                            if leq[j * n + k] {
                                assert!(leq[i * n + k], "transitivity");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn is_reduced_examples() {
        assert!(is_reduced(&[]));
        let spec = a(3);
        assert!(!is_reduced(&[t(spec, 1, 2), t(spec, 2, 3), t(spec, 1, 3)]));
        let spec = b(2);
        assert!(is_reduced(&[
            Reflection::flip(spec, 1).unwrap(),
            Reflection::flip(spec, 2).unwrap()
        ]));
    }

    #[test]
    fn carter_agrees_with_length_additivity() {
        // Every word of length <= 4 over T(S_4) and T(B_3): reduced iff the
        // product's length equals the word length.
        for spec in [a(4), b(3)] {
            let refl = spec.all_reflections();
            for k in 0..=4usize {
                for idx in std::iter::repeat_n(0..refl.len(), k).multi_cartesian_product() {
                    let letters: Vec<Reflection> = idx.iter().map(|&i| refl[i]).collect();
                    let mut prod = spec.identity();
                    for l in letters.iter().rev() {
                        prod = l.to_element().times(&prod);
                    }
                    assert_eq!(
                        is_reduced(&letters),
                        prod.reflection_length() == k,
                        "word {:?}",
                        letters.iter().map(|t| t.to_string()).collect::<Vec<_>>()
                    );
                }
            }
        }
    }

    #[test]
    fn moved_space_basis_spans_moved_space() {
        // Basis roots of any reduced word span mov(product): the rank of the
        // stacked matrix [roots; columns of M - I] equals l(w) for both.
        let spec = a(4);
        let w = spec.coxeter_element();
        for word in reduced_words_of(&w, &Budget::default()).unwrap() {
            let roots = moved_space_basis(&word);
            let mut rows: Vec<Vec<i64>> = roots
                .iter()
                .map(|r| r.coords.iter().map(|&c| c as i64).collect())
                .collect();
            let l = rows.len();
            // Append the columns of M - I; the span must not grow.
            let d = spec.degree() as usize;
            for col in 0..d {
                let mut v = vec![0i64; d];
                let img = w.images()[col];
                v[img.unsigned_abs() as usize - 1] += img.signum() as i64;
                v[col] -= 1;
                rows.push(v);
            }
            assert_eq!(int_rank(rows), l);
        }
    }

    #[test]
    fn equal_spans_for_two_words_of_same_element() {
        let spec = a(3);
        let w = spec.coxeter_element();
        let words = reduced_words_of(&w, &Budget::default()).unwrap();
        assert!(words.len() > 1);
        // All moved-space bases of one element are row equivalent.
        let rank_of = |roots: &[Root]| {
            int_rank(
                roots
                    .iter()
                    .map(|r| r.coords.iter().map(|&c| c as i64).collect())
                    .collect(),
            )
        };
        let first = moved_space_basis(&words[0]);
        for word in &words[1..] {
            let other = moved_space_basis(word);
            let mut all: Vec<Root> = first.clone();
            all.extend(other.iter().cloned());
            assert_eq!(rank_of(&all), rank_of(&first));
        }
    }

    #[test]
    fn reduced_words_of_reflection_is_singleton() {
        let spec = b(3);
        for r in spec.all_reflections() {
            let words = reduced_words_of(&r.to_element(), &Budget::default()).unwrap();
            assert_eq!(words.len(), 1);
            assert_eq!(words[0].letters(), &[r]);
        }
    }

    #[test]
    fn reduced_word_counts_for_coxeter_elements() {
        // |R_T(c)| = m^{m-2} in type A.
        let words = reduced_words_of(&a(4).coxeter_element(), &Budget::default()).unwrap();
        assert_eq!(words.len(), 16);
        let words = reduced_words_of(&b(2).coxeter_element(), &Budget::default()).unwrap();
        assert_eq!(words.len(), 4);
        // Deterministic lexicographic order and no repeated letters.
        let mut sorted = words.clone();
        sorted.sort();
        assert_eq!(words, sorted);
        for w in &words {
            for (i, x) in w.letters().iter().enumerate() {
                assert!(!w.letters()[i + 1..].contains(x), "repetition in {w}");
            }
        }
    }

    #[test]
    fn reduced_words_budget_is_enforced() {
        let err = reduced_words_of(&a(5).coxeter_element(), &Budget::with_limit(10));
        assert!(matches!(err, Err(Error::Resource(_))));
    }

    #[test]
    fn words_validate() {
        let spec = a(3);
        assert!(ReducedWord::new(spec, vec![t(spec, 1, 2), t(spec, 2, 3)]).is_ok());
        assert!(ReducedWord::new(spec, vec![t(spec, 1, 2), t(spec, 1, 2)]).is_err());
        // The empty word is reduced (for the identity) with an empty basis.
        let empty = ReducedWord::new(spec, vec![]).unwrap();
        assert!(empty.product().is_identity());
        assert!(moved_space_basis(&empty).is_empty());
    }
}
