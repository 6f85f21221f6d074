//! Hurwitz shift moves on reduced words, the Hurwitz graph on the maximal
//! chains of `NC(W, c)`, its exact BFS metrics, and the comparison with the
//! chamber graph of the order complex.
//!
//! Two chains are adjacent in the Hurwitz graph iff they differ in exactly
//! one element. The shift moves `sigma_i` generate a subgraph of these edges;
//! it is exposed separately as a diagnostic while all metrics use the
//! one-element-difference rule.

use std::collections::{BTreeSet, HashMap};

use serde_json::json;

use crate::graph::{AdjGraph, GraphMetrics};
use crate::group::{CoxeterSpec, ReducedWord, Reflection};
use crate::lattice::{MaximalChain, NcLattice};
use crate::{Budget, Error, Result};

/// Left shift: replace positions `i, i+1` of the word by
/// `(t_i t_{i+1} t_i, t_i)`. Positions are 1-based and `1 <= i < len`.
pub fn sigma(i: usize, word: &ReducedWord) -> Result<ReducedWord> {
    let (a, b) = shift_pair(i, word)?;
    let conj = conjugate(a, b)?;
    let mut letters = word.letters().to_vec();
    letters[i - 1] = conj;
    letters[i] = a;
    ReducedWord::new(word.spec(), letters)
}

/// Right shift, inverse of [`sigma`]: replace positions `i, i+1` by
/// `(t_{i+1}, t_{i+1} t_i t_{i+1})`.
pub fn sigma_prime(i: usize, word: &ReducedWord) -> Result<ReducedWord> {
    let (a, b) = shift_pair(i, word)?;
    let conj = conjugate(b, a)?;
    let mut letters = word.letters().to_vec();
    letters[i - 1] = b;
    letters[i] = conj;
    ReducedWord::new(word.spec(), letters)
}

fn shift_pair(i: usize, word: &ReducedWord) -> Result<(Reflection, Reflection)> {
    if i < 1 || i >= word.len() {
        return Err(Error::Usage(format!(
            "shift position {i} out of range 1..{}",
            word.len()
        )));
    }
    Ok((word.letters()[i - 1], word.letters()[i]))
}

/// `a b a` as a reflection.
fn conjugate(a: Reflection, b: Reflection) -> Result<Reflection> {
    let e = a.to_element().times(&b.to_element()).times(&a.to_element());
    Reflection::from_element(&e)
        .ok_or_else(|| Error::Integrity(format!("conjugate {e} of a reflection is not one")))
}

/// Multiplicative order of the product of the letters at positions `i, i+1`;
/// the shift `sigma_i` has exactly this order on the word. Commuting letters
/// give 2, transposition-like overlaps give 3; type B also has pairs of
/// order 4.
pub fn adjacent_pair_order(i: usize, word: &ReducedWord) -> Result<usize> {
    let (a, b) = shift_pair(i, word)?;
    let prod = a.to_element().times(&b.to_element());
    let mut acc = prod.clone();
    let mut order = 1;
    while !acc.is_identity() {
        acc = acc.times(&prod);
        order += 1;
    }
    Ok(order)
}

/// The closure of `word` under all shifts `sigma_i` and their inverses,
/// sorted canonically. For a Coxeter element this is all of `R_T(c)` by
/// transitivity of the Hurwitz action.
pub fn hurwitz_orbit(word: &ReducedWord, budget: &Budget) -> Result<Vec<ReducedWord>> {
    let mut seen: BTreeSet<ReducedWord> = BTreeSet::new();
    let mut stack = vec![word.clone()];
    seen.insert(word.clone());
    while let Some(w) = stack.pop() {
        for i in 1..w.len() {
            for moved in [sigma(i, &w)?, sigma_prime(i, &w)?] {
                if !seen.contains(&moved) {
                    if seen.len() as u64 >= budget.max_words {
                        return Err(Error::Resource(format!(
                            "orbit exceeds budget of {}",
                            budget.max_words
                        )));
                    }
                    seen.insert(moved.clone());
                    stack.push(moved);
                }
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// The Hurwitz graph: vertices are the maximal chains of `NC(W, c)` in
/// lexicographic order, edges join chains differing in exactly one element.
#[derive(Debug, Clone)]
pub struct HurwitzGraph {
    lattice: NcLattice,
    chains: Vec<MaximalChain>,
    words: Vec<ReducedWord>,
    chain_index: HashMap<MaximalChain, u32>,
    graph: AdjGraph,
}

impl HurwitzGraph {
    pub fn build(spec: CoxeterSpec, budget: &Budget) -> Result<Self> {
        Self::from_lattice(NcLattice::build(spec, budget)?, budget)
    }

    pub fn from_lattice(lattice: NcLattice, budget: &Budget) -> Result<Self> {
        let chains = lattice.maximal_chains(budget)?;
        let words = chains
            .iter()
            .map(|ch| lattice.chain_to_word(ch))
            .collect::<Result<Vec<_>>>()?;
        let chain_index: HashMap<MaximalChain, u32> = chains
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i as u32))
            .collect();
        let inner: Vec<Vec<u32>> = chains.iter().map(|c| c.proper().to_vec()).collect();
        let graph = AdjGraph::from_one_position_difference(&inner);
        Ok(HurwitzGraph { lattice, chains, words, chain_index, graph })
    }

    pub fn spec(&self) -> CoxeterSpec {
        self.lattice.spec()
    }

    pub fn lattice(&self) -> &NcLattice {
        &self.lattice
    }

    pub fn chains(&self) -> &[MaximalChain] {
        &self.chains
    }

    pub fn words(&self) -> &[ReducedWord] {
        &self.words
    }

    pub fn graph(&self) -> &AdjGraph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.chains.len()
    }

    pub fn chain_index(&self, chain: &MaximalChain) -> Option<u32> {
        self.chain_index.get(chain).copied()
    }

    /// Vertex index of the chain attached to a reduced word of `c`.
    pub fn word_index(&self, word: &ReducedWord) -> Result<u32> {
        let chain = self.lattice.word_to_chain(word)?;
        self.chain_index(&chain)
            .ok_or_else(|| Error::Integrity("chain of a valid word missing from vertex set".into()))
    }

    pub fn metrics(&self) -> Result<GraphMetrics> {
        self.graph.metrics()
    }

    /// JSON metrics report with word labels for a few diameter pairs, and
    /// the radius bound `C(rank, 2)` that every Hurwitz graph must meet.
    pub fn metrics_report(&self) -> Result<serde_json::Value> {
        let m = self.graph.metrics()?;
        let witness_pairs: Vec<[String; 2]> = self
            .graph
            .diameter_pairs(m.diameter, 3)
            .into_iter()
            .map(|(a, b)| [self.words[a as usize].to_string(), self.words[b as usize].to_string()])
            .collect();
        let rank = self.spec().rank();
        let bound = (rank * (rank - 1) / 2) as u32;
        Ok(json!({
            "schema_version": 1,
            "family": self.spec().family(),
            "degree": self.spec().degree(),
            "vertex_count": self.vertex_count(),
            "edge_count": self.graph.edge_count(),
            "radius": m.radius,
            "diameter": m.diameter,
            "radius_lower_bound": bound,
            "radius_bound_ok": m.radius >= bound,
            "witness_pairs": witness_pairs,
        }))
    }

    /// DOT export; vertices are labeled by their reduced words.
    pub fn to_dot(&self) -> String {
        let labels: Vec<String> = self.words.iter().map(|w| w.to_string()).collect();
        self.graph.to_dot("hurwitz", &labels)
    }

    /// Diagnostic subgraph whose edges come from single shift moves only.
    /// A subgraph of the Hurwitz graph by construction checks; the full graph
    /// may have more edges.
    pub fn sigma_move_graph(&self) -> Result<AdjGraph> {
        let mut adj = vec![Vec::new(); self.chains.len()];
        for (v, word) in self.words.iter().enumerate() {
            for i in 1..word.len() {
                for moved in [sigma(i, word)?, sigma_prime(i, word)?] {
                    let w = self.word_index(&moved)?;
                    if w as usize != v {
                        adj[v].push(w);
                    }
                }
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(AdjGraph::new(adj))
    }

    /// Checks that every iterated shift `sigma_i^k` of every word lands on a
    /// Hurwitz-graph neighbor (or back on the word itself).
    pub fn sigma_moves_are_edges(&self) -> Result<bool> {
        for (v, word) in self.words.iter().enumerate() {
            for i in 1..word.len() {
                let mut moved = word.clone();
                loop {
                    moved = sigma(i, &moved)?;
                    let w = self.word_index(&moved)?;
                    if w as usize == v {
                        break;
                    }
                    if !self.graph.neighbors(v as u32).contains(&w) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

/// The chamber graph of the order complex `|NC(W)|`, built from the chamber
/// side: vertices are the chambers (proper chain parts as sets, index-sorted),
/// edges join chambers sharing a codimension-one face. The vertex order is
/// the canonical bijection with the Hurwitz graph: chamber `i` is the vertex
/// set of chain `i`.
pub fn chamber_graph_nc(lattice: &NcLattice, budget: &Budget) -> Result<AdjGraph> {
    let chains = lattice.maximal_chains(budget)?;
    let chambers: Vec<Vec<u32>> = chains
        .iter()
        .map(|c| {
            let mut s = c.proper().to_vec();
            s.sort_unstable();
            s
        })
        .collect();
    Ok(AdjGraph::from_one_element_difference(&chambers))
}

/// DOT export of the chamber graph, labeled by the reduced words of the
/// chambers' chains (the canonical vertex bijection with the Hurwitz graph).
pub fn chamber_graph_dot(lattice: &NcLattice, budget: &Budget) -> Result<String> {
    let graph = chamber_graph_nc(lattice, budget)?;
    let labels: Vec<String> = lattice
        .maximal_chains(budget)?
        .iter()
        .map(|c| lattice.chain_to_word(c).map(|w| w.to_string()))
        .collect::<Result<_>>()?;
    Ok(graph.to_dot("nc_chambers", &labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::reduced_words_of;

    fn words_of_c(spec: CoxeterSpec) -> Vec<ReducedWord> {
        reduced_words_of(&spec.coxeter_element(), &Budget::default()).unwrap()
    }

    fn t(spec: CoxeterSpec, i: u8, j: u8) -> Reflection {
        Reflection::transposition(spec, i, j).unwrap()
    }

    #[test]
    fn sigma_example_s3() {
        let spec = CoxeterSpec::type_a(3).unwrap();
        let word = ReducedWord::new(spec, vec![t(spec, 1, 2), t(spec, 2, 3)]).unwrap();
        let shifted = sigma(1, &word).unwrap();
        assert_eq!(shifted.to_string(), "(1,3)(1,2)");
        assert_eq!(shifted.product(), word.product());
        let back = sigma_prime(1, &shifted).unwrap();
        assert_eq!(back, word);
    }

    #[test]
    fn sigma_swaps_commuting_letters() {
        let spec = CoxeterSpec::type_a(4).unwrap();
        let word = ReducedWord::new(spec, vec![t(spec, 1, 2), t(spec, 3, 4)]).unwrap();
        let shifted = sigma(1, &word).unwrap();
        assert_eq!(shifted.letters(), &[t(spec, 3, 4), t(spec, 1, 2)]);
    }

    #[test]
    fn sigma_rejects_out_of_range() {
        let spec = CoxeterSpec::type_a(3).unwrap();
        let word = ReducedWord::new(spec, vec![t(spec, 1, 2), t(spec, 2, 3)]).unwrap();
        assert!(sigma(0, &word).is_err());
        assert!(sigma(2, &word).is_err());
    }

    #[test]
    fn shifts_are_inverse_bijections_s5() {
        let spec = CoxeterSpec::type_a(5).unwrap();
        for word in words_of_c(spec) {
            for i in 1..word.len() {
                assert_eq!(sigma_prime(i, &sigma(i, &word).unwrap()).unwrap(), word);
                assert_eq!(sigma(i, &sigma_prime(i, &word).unwrap()).unwrap(), word);
                assert_eq!(sigma(i, &word).unwrap().product(), word.product());
            }
        }
    }

    #[test]
    fn shifts_satisfy_braid_relation_s4() {
        let spec = CoxeterSpec::type_a(4).unwrap();
        for word in words_of_c(spec) {
            for i in 1..word.len() - 1 {
                let lhs = sigma(i, &sigma(i + 1, &sigma(i, &word).unwrap()).unwrap()).unwrap();
                let rhs =
                    sigma(i + 1, &sigma(i, &sigma(i + 1, &word).unwrap()).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn shift_order_equals_pair_order() {
        // sigma_i^2 fixes words at commuting positions, sigma_i^3 at positions
        // whose letters generate a dihedral group of order 6; type B also has
        // order-4 pairs and there sigma_i^4 is the first return.
        for spec in [CoxeterSpec::type_a(5).unwrap(), CoxeterSpec::type_b(3).unwrap()] {
            for word in words_of_c(spec) {
                for i in 1..word.len() {
                    let order = adjacent_pair_order(i, &word).unwrap();
                    let mut moved = word.clone();
                    let mut first_return = 0;
                    for k in 1..=order {
                        moved = sigma(i, &moved).unwrap();
                        if moved == word {
                            first_return = k;
                            break;
                        }
                    }
                    assert_eq!(first_return, order, "{word} position {i}");
                }
            }
        }
    }

    #[test]
    fn type_a_pair_orders_are_two_or_three() {
        let spec = CoxeterSpec::type_a(5).unwrap();
        for word in words_of_c(spec) {
            for i in 1..word.len() {
                let order = adjacent_pair_order(i, &word).unwrap();
                assert!(order == 2 || order == 3);
            }
        }
    }

    #[test]
    fn orbit_of_single_letter_is_singleton() {
        let spec = CoxeterSpec::type_b(3).unwrap();
        let word = ReducedWord::new(spec, vec![Reflection::flip(spec, 1).unwrap()]).unwrap();
        assert_eq!(hurwitz_orbit(&word, &Budget::default()).unwrap().len(), 1);
    }

    #[test]
    fn shifts_close_on_words_of_any_element() {
        // The shift maps are self-maps of R_T(w) for every w, not just c.
        let spec = CoxeterSpec::type_a(4).unwrap();
        let budget = Budget::default();
        for w in spec.all_elements() {
            let words = reduced_words_of(&w, &budget).unwrap();
            for word in &words {
                for i in 1..word.len() {
                    let moved = sigma(i, word).unwrap();
                    assert_eq!(moved.product(), w);
                    assert!(words.contains(&moved));
                }
            }
        }
    }

    #[test]
    fn orbit_budget_enforced() {
        let spec = CoxeterSpec::type_a(4).unwrap();
        let words = words_of_c(spec);
        assert!(matches!(
            hurwitz_orbit(&words[0], &Budget::with_limit(2)),
            Err(crate::Error::Resource(_))
        ));
    }

    #[test]
    fn orbit_is_all_of_rt_c() {
        for spec in [CoxeterSpec::type_a(4).unwrap(), CoxeterSpec::type_b(3).unwrap()] {
            let mut words = words_of_c(spec);
            words.sort();
            let orbit = hurwitz_orbit(&words[0], &Budget::default()).unwrap();
            assert_eq!(orbit, words);
        }
    }

    #[test]
    fn small_hurwitz_graphs() {
        // H(S_3) is the triangle on the three chains.
        let g = HurwitzGraph::build(CoxeterSpec::type_a(3).unwrap(), &Budget::default()).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.graph().edge_count(), 3);
        let m = g.metrics().unwrap();
        assert_eq!((m.radius, m.diameter), (1, 1));

        let g = HurwitzGraph::build(CoxeterSpec::type_a(4).unwrap(), &Budget::default()).unwrap();
        assert_eq!(g.vertex_count(), 16);
        let m = g.metrics().unwrap();
        assert_eq!((m.radius, m.diameter), (3, 3));
    }

    #[test]
    fn b3_metrics_disprove_radius_conjecture() {
        let g = HurwitzGraph::build(CoxeterSpec::type_b(3).unwrap(), &Budget::default()).unwrap();
        assert_eq!(g.vertex_count(), 27);
        let m = g.metrics().unwrap();
        assert_eq!((m.radius, m.diameter), (3, 4));
    }

    #[test]
    fn chamber_graph_matches_hurwitz_graph() {
        for spec in [CoxeterSpec::type_a(4).unwrap(), CoxeterSpec::type_b(3).unwrap()] {
            let g = HurwitzGraph::build(spec, &Budget::default()).unwrap();
            let cg = chamber_graph_nc(g.lattice(), &Budget::default()).unwrap();
            assert_eq!(g.graph().adjacency(), cg.adjacency());
        }
    }

    #[test]
    fn sigma_moves_land_on_edges() {
        for spec in [
            CoxeterSpec::type_a(4).unwrap(),
            CoxeterSpec::type_a(5).unwrap(),
            CoxeterSpec::type_b(3).unwrap(),
        ] {
            let g = HurwitzGraph::build(spec, &Budget::default()).unwrap();
            assert!(g.sigma_moves_are_edges().unwrap());
        }
    }

    #[test]
    fn sigma_move_graph_is_subgraph() {
        let g = HurwitzGraph::build(CoxeterSpec::type_b(3).unwrap(), &Budget::default()).unwrap();
        let sub = g.sigma_move_graph().unwrap();
        for v in 0..g.vertex_count() as u32 {
            for w in sub.neighbors(v) {
                assert!(g.graph().neighbors(v).contains(w));
            }
        }
        assert!(sub.edge_count() <= g.graph().edge_count());
    }

    #[test]
    fn dot_and_report_shape() {
        let g = HurwitzGraph::build(CoxeterSpec::type_a(3).unwrap(), &Budget::default()).unwrap();
        let dot = g.to_dot();
        assert!(dot.starts_with("graph hurwitz {"));
        assert!(dot.contains("(1,2)(2,3)"));
        let report = g.metrics_report().unwrap();
        assert_eq!(report["vertex_count"], 3);
        assert_eq!(report["radius"], 1);
    }
}
