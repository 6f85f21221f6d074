//! The non-crossing partition lattice `NC(W, c)`: the interval between the
//! identity and the fixed Coxeter element in absolute order.
//!
//! The lattice is built by enumerating the full group and filtering by
//! `pi <= c`; joins and meets are computed as unique minimal upper / maximal
//! lower bounds over the explicit element list, and uniqueness (the lattice
//! property) is verified during the build instead of being trusted.

use std::collections::HashMap;

use serde::Serialize;
use serde_json::json;

use crate::group::{CoxeterSpec, Element, Family, ReducedWord, Reflection};
use crate::{par, Budget, Error, Result};

/// Explicit graded lattice on `[id, c]` with precomputed order, cover,
/// join and meet tables. Immutable after construction; queries are pure.
#[derive(Debug, Clone)]
pub struct NcLattice {
    spec: CoxeterSpec,
    elements: Vec<Element>,
    index: HashMap<Element, u32>,
    rank: Vec<u8>,
    leq: Vec<bool>,
    covers_up: Vec<Vec<u32>>,
    covers_down: Vec<Vec<u32>>,
    join_tab: Vec<u32>,
    meet_tab: Vec<u32>,
    bottom: u32,
    top: u32,
}

/// A maximal chain `bottom = w_0 < w_1 < ... < w_rank = top`, stored as
/// element indices into the owning lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MaximalChain {
    indices: Vec<u32>,
}

impl MaximalChain {
    pub(crate) fn from_indices(indices: Vec<u32>) -> Self {
        MaximalChain { indices }
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    /// The proper part of the chain (endpoints dropped); as a set this is the
    /// chamber of the order complex the chain corresponds to.
    pub fn proper(&self) -> &[u32] {
        &self.indices[1..self.indices.len() - 1]
    }
}

/// The image of a reduced word of `c` under the map sending `t_1 ... t_n` to
/// all joins of subsets of its letters: a maximal Boolean sublattice.
#[derive(Debug, Clone)]
pub struct BooleanSublattice {
    atoms: Vec<Reflection>,
    atom_indices: Vec<u32>,
    members_by_mask: Vec<u32>,
}

impl BooleanSublattice {
    pub fn atoms(&self) -> &[Reflection] {
        &self.atoms
    }

    pub fn atom_indices(&self) -> &[u32] {
        &self.atom_indices
    }

    /// Member for a subset of atoms, encoded as a bitmask.
    pub fn member(&self, mask: usize) -> u32 {
        self.members_by_mask[mask]
    }

    pub fn member_count(&self) -> usize {
        self.members_by_mask.len()
    }

    /// Sorted member indices.
    pub fn member_set(&self) -> Vec<u32> {
        let mut m = self.members_by_mask.clone();
        m.sort_unstable();
        m.dedup();
        m
    }

    pub fn contains(&self, x: u32) -> bool {
        self.members_by_mask.contains(&x)
    }
}

impl NcLattice {
    /// Build `NC(W, c)` for the given spec. Degrees above the budget caps are
    /// rejected with a resource error.
    pub fn build(spec: CoxeterSpec, budget: &Budget) -> Result<Self> {
        let cap = match spec.family() {
            Family::A => budget.max_degree_a,
            Family::B => budget.max_degree_b,
        };
        if spec.degree() > cap {
            return Err(Error::Resource(format!(
                "degree {} exceeds cap {} for type {}",
                spec.degree(),
                cap,
                spec.family()
            )));
        }

        let c = spec.coxeter_element();
        let elements: Vec<Element> = spec
            .all_elements()
            .into_iter()
            .filter(|e| e.absolute_leq(&c).expect("same spec"))
            .collect();
        let n = elements.len();
        let rank: Vec<u8> = elements.iter().map(|e| e.reflection_length() as u8).collect();
        let index: HashMap<Element, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i as u32))
            .collect();

        // Order relation: x <= y iff l(y) = l(x) + l(x^{-1} y).
        let leq_rows = par::map_range(n, |x| {
            let mut row = vec![false; n];
            let inv = elements[x].inverse();
            for (y, slot) in row.iter_mut().enumerate() {
                *slot = if rank[x] > rank[y] {
                    false
                } else if x == y {
                    true
                } else {
                    let quot = inv.times(&elements[y]);
                    rank[y] as usize == rank[x] as usize + quot.reflection_length()
                };
            }
            row
        });
        let mut leq = vec![false; n * n];
        for (x, row) in leq_rows.into_iter().enumerate() {
            leq[x * n..(x + 1) * n].copy_from_slice(&row);
        }

        let mut covers_up = vec![Vec::new(); n];
        let mut covers_down = vec![Vec::new(); n];
        for x in 0..n {
            for y in 0..n {
                if leq[x * n + y] && rank[y] == rank[x] + 1 {
                    covers_up[x].push(y as u32);
                    covers_down[y].push(x as u32);
                }
            }
        }

        // Element indices in rank-ascending order; a single scan over this
        // list finds least upper bounds.
        let mut by_rank: Vec<u32> = (0..n as u32).collect();
        by_rank.sort_by_key(|&i| (rank[i as usize], i));
        let by_rank_desc: Vec<u32> = by_rank.iter().rev().copied().collect();

        // Join and meet tables. This is where the lattice property of the
        // interval is checked rather than cited: the least upper bound must
        // be below every other upper bound (dually for meets).
        let join_rows: Vec<Result<Vec<u32>>> = par::map_range(n, |x| {
            let mut row = vec![0u32; n];
            for y in 0..n {
                let j = *by_rank
                    .iter()
                    .find(|&&z| leq[x * n + z as usize] && leq[y * n + z as usize])
                    .expect("top bounds everything");
                for z in 0..n {
                    if leq[x * n + z] && leq[y * n + z] && !leq[j as usize * n + z] {
                        return Err(Error::Integrity(format!(
                            "join of {} and {} is not unique",
                            elements[x], elements[y]
                        )));
                    }
                }
                row[y] = j;
            }
            Ok(row)
        });
        let mut join_tab = vec![0u32; n * n];
        for (x, row) in join_rows.into_iter().enumerate() {
            join_tab[x * n..(x + 1) * n].copy_from_slice(&row?);
        }

        let meet_rows: Vec<Result<Vec<u32>>> = par::map_range(n, |x| {
            let mut row = vec![0u32; n];
            for y in 0..n {
                let m = *by_rank_desc
                    .iter()
                    .find(|&&z| leq[z as usize * n + x] && leq[z as usize * n + y])
                    .expect("bottom is below everything");
                for z in 0..n {
                    if leq[z * n + x] && leq[z * n + y] && !leq[z * n + m as usize] {
                        return Err(Error::Integrity(format!(
                            "meet of {} and {} is not unique",
                            elements[x], elements[y]
                        )));
                    }
                }
                row[y] = m;
            }
            Ok(row)
        });
        let mut meet_tab = vec![0u32; n * n];
        for (x, row) in meet_rows.into_iter().enumerate() {
            meet_tab[x * n..(x + 1) * n].copy_from_slice(&row?);
        }

        let bottom = index[&spec.identity()];
        let top = index[&c];

        Ok(NcLattice {
            spec,
            elements,
            index,
            rank,
            leq,
            covers_up,
            covers_down,
            join_tab,
            meet_tab,
            bottom,
            top,
        })
    }

    pub fn spec(&self) -> CoxeterSpec {
        self.spec
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn element(&self, x: u32) -> &Element {
        &self.elements[x as usize]
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn index_of(&self, e: &Element) -> Option<u32> {
        self.index.get(e).copied()
    }

    pub fn rank_of(&self, x: u32) -> usize {
        self.rank[x as usize] as usize
    }

    pub fn bottom(&self) -> u32 {
        self.bottom
    }

    pub fn top(&self) -> u32 {
        self.top
    }

    pub fn leq(&self, x: u32, y: u32) -> bool {
        self.leq[x as usize * self.elements.len() + y as usize]
    }

    pub fn join(&self, x: u32, y: u32) -> u32 {
        self.join_tab[x as usize * self.elements.len() + y as usize]
    }

    pub fn meet(&self, x: u32, y: u32) -> u32 {
        self.meet_tab[x as usize * self.elements.len() + y as usize]
    }

    pub fn covers_up(&self, x: u32) -> &[u32] {
        &self.covers_up[x as usize]
    }

    pub fn covers_down(&self, x: u32) -> &[u32] {
        &self.covers_down[x as usize]
    }

    /// Indices of the rank-one elements (the reflections below `c`).
    pub fn atoms(&self) -> Vec<u32> {
        (0..self.len() as u32).filter(|&x| self.rank_of(x) == 1).collect()
    }

    /// All maximal chains, in lexicographic order of their index sequences.
    pub fn maximal_chains(&self, budget: &Budget) -> Result<Vec<MaximalChain>> {
        let mut out = Vec::new();
        let mut stack = vec![self.bottom];
        self.chains_rec(&mut stack, &mut out, budget.max_chains)?;
        Ok(out)
    }

    fn chains_rec(
        &self,
        stack: &mut Vec<u32>,
        out: &mut Vec<MaximalChain>,
        cap: u64,
    ) -> Result<()> {
        let last = *stack.last().unwrap();
        if last == self.top {
            if out.len() as u64 >= cap {
                return Err(Error::Resource(format!(
                    "maximal chain enumeration exceeds budget of {cap}"
                )));
            }
            out.push(MaximalChain { indices: stack.clone() });
            return Ok(());
        }
        for &next in &self.covers_up[last as usize] {
            stack.push(next);
            self.chains_rec(stack, out, cap)?;
            stack.pop();
        }
        Ok(())
    }

    /// The prefix chain `id <= t_1 <= t_1 t_2 <= ... <= c` of a reduced word
    /// of the Coxeter element.
    pub fn word_to_chain(&self, word: &ReducedWord) -> Result<MaximalChain> {
        if word.spec() != self.spec {
            return Err(Error::Usage("word spec does not match lattice".into()));
        }
        let c = self.spec.coxeter_element();
        if word.product() != c {
            return Err(Error::Usage(format!("word {word} does not multiply to {c}")));
        }
        let mut indices = vec![self.bottom];
        let mut acc = self.spec.identity();
        for t in word.letters() {
            acc = acc.times(&t.to_element());
            let idx = self.index_of(&acc).ok_or_else(|| {
                Error::Integrity(format!("prefix {acc} of a reduced word for c is not in NC"))
            })?;
            indices.push(idx);
        }
        Ok(MaximalChain { indices })
    }

    /// Inverse of [`NcLattice::word_to_chain`]: consecutive quotients of a
    /// maximal chain are reflections and spell a reduced word for `c`.
    pub fn chain_to_word(&self, chain: &MaximalChain) -> Result<ReducedWord> {
        let mut letters = Vec::with_capacity(chain.indices.len().saturating_sub(1));
        for pair in chain.indices.windows(2) {
            let quot = self.elements[pair[0] as usize]
                .inverse()
                .times(&self.elements[pair[1] as usize]);
            let t = Reflection::from_element(&quot).ok_or_else(|| {
                Error::Integrity(format!("cover quotient {quot} is not a reflection"))
            })?;
            letters.push(t);
        }
        ReducedWord::new(self.spec, letters)
    }

    /// The maximal Boolean sublattice `{join of t_i over I : I subset of
    /// positions}` attached to a reduced word of `c`.
    pub fn boolean_from_word(&self, word: &ReducedWord) -> Result<BooleanSublattice> {
        if word.spec() != self.spec {
            return Err(Error::Usage("word spec does not match lattice".into()));
        }
        if word.product() != self.spec.coxeter_element() {
            return Err(Error::Usage(format!("word {word} does not multiply to c")));
        }
        let atoms = word.letters().to_vec();
        let atom_indices: Vec<u32> = atoms
            .iter()
            .map(|t| {
                self.index_of(&t.to_element())
                    .ok_or_else(|| Error::Integrity(format!("letter {t} missing from NC")))
            })
            .collect::<Result<_>>()?;
        let members = self.boolean_members(&atom_indices)?;
        Ok(BooleanSublattice { atoms, atom_indices, members_by_mask: members })
    }

    /// Joins of all subsets of the given atoms, indexed by bitmask. Errors if
    /// two subsets share a join (the sublattice would not be Boolean).
    pub(crate) fn boolean_members(&self, atom_indices: &[u32]) -> Result<Vec<u32>> {
        let k = atom_indices.len();
        let mut members = vec![self.bottom; 1 << k];
        for mask in 1usize..(1 << k) {
            let low = mask.trailing_zeros() as usize;
            members[mask] = self.join(members[mask & (mask - 1)], atom_indices[low]);
        }
        let mut seen = members.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != members.len() {
            return Err(Error::Integrity("subset joins are not pairwise distinct".into()));
        }
        Ok(members)
    }

    /// Left modularity of a single element: `(y v x) ^ z = y v (x ^ z)` for
    /// every pair `y <= z`.
    pub fn is_left_modular(&self, x: u32) -> bool {
        let n = self.len();
        for y in 0..n as u32 {
            for z in 0..n as u32 {
                if self.leq(y, z) && self.meet(self.join(y, x), z) != self.join(y, self.meet(x, z))
                {
                    return false;
                }
            }
        }
        true
    }

    /// Left modularity for every element at once.
    pub fn left_modular_flags(&self) -> Vec<bool> {
        par::map_range(self.len(), |x| self.is_left_modular(x as u32))
    }

    /// Supersolvability via the left-modularity criterion: search for a
    /// maximal chain consisting of left modular elements and return the
    /// lexicographically least witness if one exists.
    pub fn is_supersolvable(&self) -> (bool, Option<MaximalChain>) {
        let flags = self.left_modular_flags();
        let n = self.len();
        // can_reach[x]: a flagged chain from x up to top exists.
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.rank[i as usize]));
        let mut can_reach = vec![false; n];
        for &x in &order {
            can_reach[x as usize] = flags[x as usize]
                && (x == self.top
                    || self.covers_up[x as usize].iter().any(|&y| can_reach[y as usize]));
        }
        if !can_reach[self.bottom as usize] {
            return (false, None);
        }
        let mut indices = vec![self.bottom];
        let mut cur = self.bottom;
        while cur != self.top {
            let next = *self.covers_up[cur as usize]
                .iter()
                .find(|&&y| can_reach[y as usize])
                .expect("can_reach promised a continuation");
            indices.push(next);
            cur = next;
        }
        (true, Some(MaximalChain { indices }))
    }

    /// Atom sets of all maximal (full-rank) Boolean sublattices. Every member
    /// of such a sublattice has lattice rank equal to its Boolean rank, so the
    /// atoms are reflections; the search runs over rank-correct subsets of the
    /// atoms with distinct subset joins and meet-compatible members.
    pub fn maximal_boolean_atom_sets(&self) -> Vec<Vec<u32>> {
        let atoms = self.atoms();
        let rank = self.spec.rank();
        let mut out = Vec::new();
        let mut chosen: Vec<u32> = Vec::new();
        let mut joins: Vec<u32> = vec![self.bottom];
        self.boolean_rec(&atoms, 0, rank, &mut chosen, &mut joins, &mut out);
        out
    }

    fn boolean_rec(
        &self,
        atoms: &[u32],
        from: usize,
        rank: usize,
        chosen: &mut Vec<u32>,
        joins: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if chosen.len() == rank {
            if self.boolean_meets_ok(joins) {
                out.push(chosen.clone());
            }
            return;
        }
        for (offset, &a) in atoms[from..].iter().enumerate() {
            let k = chosen.len();
            let full = self.join(joins[(1 << k) - 1], a);
            if self.rank_of(full) != k + 1 {
                continue;
            }
            let mut next_joins = joins.clone();
            next_joins.extend(joins.iter().map(|&j| self.join(j, a)));
            if next_joins[1 << k..]
                .iter()
                .enumerate()
                .any(|(mask, &j)| self.rank_of(j) != mask.count_ones() as usize + 1)
            {
                continue;
            }
            chosen.push(a);
            std::mem::swap(joins, &mut next_joins);
            self.boolean_rec(atoms, from + offset + 1, rank, chosen, joins, out);
            std::mem::swap(joins, &mut next_joins);
            chosen.pop();
        }
    }

    fn boolean_meets_ok(&self, joins: &[u32]) -> bool {
        let size = joins.len();
        let mut sorted = joins.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != size {
            return false;
        }
        for m1 in 0..size {
            for m2 in m1 + 1..size {
                if self.meet(joins[m1], joins[m2]) != joins[m1 & m2] {
                    return false;
                }
            }
        }
        true
    }

    /// First pair of order-complex vertices (proper elements) that no maximal
    /// Boolean sublattice contains together: a witness that building axiom B1
    /// fails for the image of the complex. `None` means every vertex pair
    /// shares an apartment.
    pub fn b1_vertex_witness(&self) -> Option<(u32, u32)> {
        let apartments = self.maximal_boolean_atom_sets();
        let member_sets: Vec<Vec<u32>> = apartments
            .iter()
            .map(|atoms| {
                let mut m = self
                    .boolean_members(atoms)
                    .expect("atom sets enumerate to Boolean sublattices");
                m.sort_unstable();
                m
            })
            .collect();
        let proper: Vec<u32> = (0..self.len() as u32)
            .filter(|&x| x != self.bottom && x != self.top)
            .collect();
        for (i, &x) in proper.iter().enumerate() {
            for &y in &proper[i + 1..] {
                let covered = member_sets
                    .iter()
                    .any(|m| m.binary_search(&x).is_ok() && m.binary_search(&y).is_ok());
                if !covered {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Stable JSON form: elements in canonical order as one-line notation,
    /// ranks, cover pairs, bottom and top indices.
    pub fn to_json(&self) -> serde_json::Value {
        let covers: Vec<[u32; 2]> = (0..self.len() as u32)
            .flat_map(|x| self.covers_up[x as usize].iter().map(move |&y| [x, y]))
            .collect();
        json!({
            "schema_version": 1,
            "family": self.spec.family(),
            "degree": self.spec.degree(),
            "rank": self.spec.rank(),
            "element_count": self.len(),
            "elements": self.elements.iter().map(|e| e.images().to_vec()).collect::<Vec<_>>(),
            "ranks": self.rank,
            "covers": covers,
            "bottom": self.bottom,
            "top": self.top,
        })
    }
}
