//! The subspace lattice `L(F_p^d)` as a finite spherical building: full
//! flags, chamber graphs, frames and apartments, the axiom checks at desk
//! scale, and the explicit embeddings of `NC(S_m)` over `F_2` and `NC(B_n)`
//! over `F_3`.

use serde::Serialize;
use serde_json::json;

use crate::gf::{enumerate_subspaces, Subspace};
use crate::graph::AdjGraph;
use crate::group::{CoxeterSpec, Family, ReflKind, Reflection};
use crate::lattice::NcLattice;
use crate::{par, Budget, Error, Result};

/// A full flag `0 < U_1 < ... < U_{d-1} < F_p^d` given by its proper parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flag {
    pub parts: Vec<Subspace>,
}

/// A frame: `d` lines in direct sum. Determines an apartment of the building.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    pub lines: Vec<Subspace>,
}

impl Frame {
    /// All `2^d` sums of subsets of the frame lines (the apartment as a
    /// Boolean sublattice of `L(F_p^d)`), including the zero and full spaces.
    pub fn members(&self) -> Vec<Subspace> {
        let p = self.lines[0].p();
        let d = self.lines[0].ambient_dim();
        let mut members = vec![Subspace::zero(p, d)];
        for mask in 1usize..1 << self.lines.len() {
            let low = mask.trailing_zeros() as usize;
            let prev = members[mask & (mask - 1)].clone();
            members.push(prev.sum(&self.lines[low]).expect("same ambient"));
        }
        members
    }
}

/// All full flags of `F_p^d` in canonical order.
pub fn all_flags(p: u8, d: u8, budget: &Budget) -> Result<Vec<Flag>> {
    let subspaces = enumerate_subspaces(p, d, budget)?;
    let mut flags: Vec<Flag> = vec![Flag { parts: Vec::new() }];
    for dim in 1..d as usize {
        let layer: Vec<&Subspace> = subspaces.iter().filter(|s| s.dim() == dim).collect();
        let mut next = Vec::new();
        for flag in &flags {
            for &cand in &layer {
                if flag.parts.last().is_none_or(|top| cand.contains(top)) {
                    let mut parts = flag.parts.clone();
                    parts.push(cand.clone());
                    next.push(Flag { parts });
                }
            }
        }
        flags = next;
    }
    flags.sort();
    Ok(flags)
}

/// The chamber graph of the building `|L(F_p^d)|`: vertices are full flags,
/// edges join flags differing in exactly one subspace.
pub fn building_chamber_graph(p: u8, d: u8, budget: &Budget) -> Result<(Vec<Flag>, AdjGraph)> {
    let flags = all_flags(p, d, budget)?;
    let keyed: Vec<Vec<&Subspace>> = flags.iter().map(|f| f.parts.iter().collect()).collect();
    let graph = AdjGraph::from_one_position_difference(&keyed);
    Ok((flags, graph))
}

/// DOT export of the building chamber graph; flags are labeled
/// `U1|U2|...` with each subspace printed as its basis rows in digit form.
pub fn building_chamber_graph_dot(p: u8, d: u8, budget: &Budget) -> Result<String> {
    let (flags, graph) = building_chamber_graph(p, d, budget)?;
    let labels: Vec<String> = flags
        .iter()
        .map(|f| {
            f.parts
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join("|")
        })
        .collect();
    Ok(graph.to_dot("building", &labels))
}

/// All frames of `F_p^d`: unordered sets of `d` lines spanning the space.
pub fn all_frames(p: u8, d: u8, budget: &Budget) -> Result<Vec<Frame>> {
    let lines: Vec<Subspace> = enumerate_subspaces(p, d, budget)?
        .into_iter()
        .filter(|s| s.dim() == 1)
        .collect();
    let mut frames = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn rec(
        lines: &[Subspace],
        start: usize,
        d: usize,
        chosen: &mut Vec<usize>,
        frames: &mut Vec<Frame>,
    ) {
        if chosen.len() == d {
            frames.push(Frame {
                lines: chosen.iter().map(|&i| lines[i].clone()).collect(),
            });
            return;
        }
        for i in start..lines.len() {
            // Extend only while the chosen lines stay in direct sum.
            let mut sum = lines[chosen[0]].clone();
            for &j in &chosen[1..] {
                sum = sum.sum(&lines[j]).unwrap();
            }
            if !chosen.is_empty() && sum.contains(&lines[i]) {
                continue;
            }
            chosen.push(i);
            rec(lines, i + 1, d, chosen, frames);
            chosen.pop();
        }
    }
    for i in 0..lines.len() {
        chosen.push(i);
        rec(&lines, i + 1, d as usize, &mut chosen, &mut frames);
        chosen.pop();
    }
    Ok(frames)
}

/// Building axiom B1 at desk scale (`d = 3`): every pair of simplices of
/// `|L(F_p^3)|` (vertices and incident pairs) lies in the apartment of some
/// frame.
pub fn check_b1_small(p: u8, d: u8, budget: &Budget) -> Result<bool> {
    if d != 3 {
        return Err(Error::Usage("B1 check implemented for d = 3 only".into()));
    }
    let subspaces = enumerate_subspaces(p, d, budget)?;
    let proper: Vec<&Subspace> = subspaces
        .iter()
        .filter(|s| s.dim() > 0 && s.dim() < d as usize)
        .collect();
    // Simplices of the rank-2 order complex: vertices and edges (flags).
    let mut simplices: Vec<Vec<&Subspace>> = proper.iter().map(|&s| vec![s]).collect();
    for &a in &proper {
        for &b in &proper {
            if a.dim() < b.dim() && b.contains(a) {
                simplices.push(vec![a, b]);
            }
        }
    }
    let frames = all_frames(p, d, budget)?;
    let frame_members: Vec<Vec<Subspace>> = frames
        .iter()
        .map(|f| {
            let mut m = f.members();
            m.sort();
            m
        })
        .collect();
    let ok = par::map_range(simplices.len(), |i| {
        let si = &simplices[i];
        simplices[i..].iter().all(|sj| {
            frame_members.iter().any(|members| {
                si.iter()
                    .chain(sj.iter())
                    .all(|s| members.binary_search(s).is_ok())
            })
        })
    });
    Ok(ok.into_iter().all(|b| b))
}

/// Field and ambient dimension of the explicit embedding: `F_2^{m-1}` for
/// `S_m`, `F_3^n` for `B_n`.
pub fn embed_params(spec: CoxeterSpec) -> (u8, u8) {
    match spec.family() {
        Family::A => (2, spec.degree() - 1),
        Family::B => (3, spec.degree()),
    }
}

/// The line attached to a reflection. Type A maps `(i, j)` to `<e_i + e_j>`
/// for `j < m` and to `<e_i>` for `j = m`, inside `F_2^{m-1}`; type B maps
/// `[i]` to `<e_i>`, `<<i,j>>` to `<e_i - e_j>` and `<<i,-j>>` to
/// `<e_i + e_j>`, inside `F_3^n`.
pub fn embed_reflection(t: &Reflection) -> Subspace {
    let (p, d) = embed_params(t.spec());
    let mut v = vec![0u8; d as usize];
    match t.kind() {
        ReflKind::Transposition(i, j) => {
            if j < t.spec().degree() {
                v[i as usize - 1] = 1;
                v[j as usize - 1] = 1;
            } else {
                v[i as usize - 1] = 1;
            }
        }
        ReflKind::Flip(i) => v[i as usize - 1] = 1,
        ReflKind::Paired(i, j) => {
            v[i as usize - 1] = 1;
            // -1 = 2 in F_3.
            v[j.unsigned_abs() as usize - 1] = if j > 0 { 2 } else { 1 };
        }
    }
    Subspace::line(p, d, &v)
}

/// Images of every lattice element: the moved space of a reduced word,
/// computed bottom-up along covers (the image is independent of the chosen
/// word; the word-independence claim is checked separately).
pub fn embed_all(lattice: &NcLattice) -> Vec<Subspace> {
    let (p, d) = embed_params(lattice.spec());
    let n = lattice.len();
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_by_key(|&x| (lattice.rank_of(x), x));
    let mut images: Vec<Option<Subspace>> = vec![None; n];
    for x in order {
        if x == lattice.bottom() {
            images[x as usize] = Some(Subspace::zero(p, d));
            continue;
        }
        let parent = lattice.covers_down(x)[0];
        let quot = lattice
            .element(parent)
            .inverse()
            .times(lattice.element(x));
        let t = Reflection::from_element(&quot).expect("cover quotient is a reflection");
        let img = images[parent as usize]
            .as_ref()
            .expect("parents precede children in rank order")
            .sum(&embed_reflection(&t))
            .expect("same ambient");
        images[x as usize] = Some(img);
    }
    images.into_iter().map(|s| s.expect("all elements reached")).collect()
}

/// Image of a single element.
pub fn embed_element(lattice: &NcLattice, x: u32) -> Subspace {
    let (p, d) = embed_params(lattice.spec());
    let mut img = Subspace::zero(p, d);
    let mut cur = x;
    while cur != lattice.bottom() {
        let parent = lattice.covers_down(cur)[0];
        let quot = lattice
            .element(parent)
            .inverse()
            .times(lattice.element(cur));
        let t = Reflection::from_element(&quot).expect("cover quotient is a reflection");
        img = img.sum(&embed_reflection(&t)).expect("same ambient");
        cur = parent;
    }
    img
}

/// Result of the embedding verification; also the JSON report payload.
#[derive(Debug, Clone, Serialize)]
pub struct EmbeddingReport {
    pub family: Family,
    pub degree: u8,
    pub p: u8,
    pub ambient_dim: u8,
    pub injective: bool,
    pub rank_preserving: bool,
    pub order_preserving: bool,
    pub image_size: usize,
    pub total_subspaces: usize,
    pub non_surjective: bool,
    pub witness: Option<String>,
}

impl EmbeddingReport {
    pub fn all_pass(&self) -> bool {
        self.injective && self.rank_preserving && self.order_preserving && self.non_surjective
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "schema_version": 1,
            "family": self.family,
            "degree": self.degree,
            "p": self.p,
            "ambient_dim": self.ambient_dim,
            "injective": self.injective,
            "rank_preserving": self.rank_preserving,
            "order_preserving": self.order_preserving,
            "image_size": self.image_size,
            "total_subspaces": self.total_subspaces,
            "non_surjective": self.non_surjective,
            "witness": self.witness,
        })
    }
}

/// Checks injectivity, rank preservation, order preservation and
/// non-surjectivity of the embedding on the whole lattice.
pub fn verify_embedding(lattice: &NcLattice, budget: &Budget) -> Result<EmbeddingReport> {
    let (p, d) = embed_params(lattice.spec());
    let images = embed_all(lattice);
    let n = lattice.len();

    let mut witness = None;

    let mut sorted = images.clone();
    sorted.sort();
    sorted.dedup();
    let injective = sorted.len() == n;
    if !injective {
        witness = Some("two elements share an image".into());
    }

    let rank_preserving = (0..n).all(|x| images[x].dim() == lattice.rank_of(x as u32));
    if rank_preserving && witness.is_none() {
        if let Some(x) = (0..n).find(|&x| images[x].dim() != lattice.rank_of(x as u32)) {
            witness = Some(format!("rank mismatch at {}", lattice.element(x as u32)));
        }
    }

    let order_rows = par::map_range(n, |x| {
        (0..n as u32).all(|y| {
            !lattice.leq(x as u32, y) || images[y as usize].contains(&images[x])
        })
    });
    let order_preserving = order_rows.into_iter().all(|b| b);
    if !order_preserving && witness.is_none() {
        witness = Some("containment fails along the order".into());
    }

    let total_subspaces = enumerate_subspaces(p, d, budget)?.len();
    let non_surjective = sorted.len() < total_subspaces;

    Ok(EmbeddingReport {
        family: lattice.spec().family(),
        degree: lattice.spec().degree(),
        p,
        ambient_dim: d,
        injective,
        rank_preserving,
        order_preserving,
        image_size: sorted.len(),
        total_subspaces,
        non_surjective,
        witness,
    })
}

/// For every reduced word of every lattice element, all words yield one
/// image subspace.
pub fn word_independence_holds(lattice: &NcLattice, budget: &Budget) -> Result<bool> {
    let images = embed_all(lattice);
    for x in 0..lattice.len() as u32 {
        let words = crate::group::reduced_words_of(lattice.element(x), budget)?;
        for word in words {
            let mut img = Subspace::zero(images[x as usize].p(), images[x as usize].ambient_dim());
            for t in word.letters() {
                img = img.sum(&embed_reflection(t)).expect("same ambient");
            }
            if img != images[x as usize] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Join compatibility along covers: whenever `x v t` covers `x` for a
/// reflection `t`, the image of the join is the join of the images.
pub fn join_compatibility_holds(lattice: &NcLattice) -> bool {
    let images = embed_all(lattice);
    let atoms = lattice.atoms();
    for x in 0..lattice.len() as u32 {
        for &a in &atoms {
            let j = lattice.join(x, a);
            if lattice.rank_of(j) == lattice.rank_of(x) + 1 {
                let expect = images[x as usize]
                    .sum(&images[a as usize])
                    .expect("same ambient");
                if expect != images[j as usize] {
                    return false;
                }
            }
        }
    }
    true
}

/// Chamber/apartment coherence on the building side: for every reduced word
/// of `c`, the word's chain lies in the word's Boolean sublattice, the
/// letters' lines form a frame of `F_p^d`, and the chain's image is a full
/// flag.
pub fn nc_apartment_check(lattice: &NcLattice, budget: &Budget) -> Result<bool> {
    let images = embed_all(lattice);
    let c = lattice.spec().coxeter_element();
    let words = crate::group::reduced_words_of(&c, budget)?;
    let (p, d) = embed_params(lattice.spec());
    for word in &words {
        let chain = lattice.word_to_chain(word)?;
        let boolean = lattice.boolean_from_word(word)?;
        if !chain.indices().iter().all(|&x| boolean.contains(x)) {
            return Ok(false);
        }
        // The letters' lines are in direct sum and span: a frame.
        let mut sum = Subspace::zero(p, d);
        let mut dims = 0;
        for t in word.letters() {
            sum = sum.sum(&embed_reflection(t)).expect("same ambient");
            dims += 1;
            if sum.dim() != dims {
                return Ok(false);
            }
        }
        if sum.dim() != d as usize {
            return Ok(false);
        }
        // The chain's proper part maps to a strictly nested full flag.
        for (k, &x) in chain.indices().iter().enumerate() {
            if images[x as usize].dim() != k {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(m: u8) -> CoxeterSpec {
        CoxeterSpec::type_a(m).unwrap()
    }

    fn b(n: u8) -> CoxeterSpec {
        CoxeterSpec::type_b(n).unwrap()
    }

    #[test]
    fn flag_counts_and_diameters() {
        let budget = Budget::default();
        let (flags, graph) = building_chamber_graph(2, 3, &budget).unwrap();
        assert_eq!(flags.len(), 21);
        let m = graph.metrics().unwrap();
        assert_eq!((m.radius, m.diameter), (3, 3));
        // Every vertex has full eccentricity in a building chamber graph.
        assert!(m.eccentricities.iter().all(|&e| e == 3));

        let (flags, graph) = building_chamber_graph(3, 3, &budget).unwrap();
        assert_eq!(flags.len(), 52);
        assert_eq!(graph.metrics().unwrap().diameter, 3);

        let (flags, graph) = building_chamber_graph(2, 4, &budget).unwrap();
        assert_eq!(flags.len(), 315);
        let m = graph.metrics().unwrap();
        assert_eq!((m.radius, m.diameter), (6, 6));
    }

    #[test]
    fn frame_counts() {
        let budget = Budget::default();
        assert_eq!(all_frames(2, 3, &budget).unwrap().len(), 28);
        assert_eq!(all_frames(3, 3, &budget).unwrap().len(), 234);
    }

    #[test]
    fn frames_span_boolean_apartments() {
        let budget = Budget::default();
        for frame in all_frames(2, 3, &budget).unwrap().iter().take(5) {
            let members = frame.members();
            assert_eq!(members.len(), 8);
            assert_eq!(members.last().unwrap().dim(), 3);
        }
    }

    #[test]
    fn b1_holds_in_small_buildings() {
        let budget = Budget::default();
        assert!(check_b1_small(2, 3, &budget).unwrap());
        assert!(check_b1_small(3, 3, &budget).unwrap());
        assert!(check_b1_small(2, 4, &budget).is_err());
    }

    #[test]
    fn reflection_images_match_the_defining_tables() {
        let s = a(4);
        let t12 = Reflection::transposition(s, 1, 2).unwrap();
        assert_eq!(embed_reflection(&t12).to_string(), "110");
        let t24 = Reflection::transposition(s, 2, 4).unwrap();
        assert_eq!(embed_reflection(&t24).to_string(), "010");
        let s = b(3);
        let f2 = Reflection::flip(s, 2).unwrap();
        assert_eq!(embed_reflection(&f2).to_string(), "010");
        let p1m2 = Reflection::paired(s, 1, -2).unwrap();
        assert_eq!(embed_reflection(&p1m2).to_string(), "110");
        let p12 = Reflection::paired(s, 1, 2).unwrap();
        assert_eq!(embed_reflection(&p12).to_string(), "120");
    }

    #[test]
    fn reflection_images_are_injective() {
        for spec in [a(5), b(4)] {
            let mut images: Vec<Subspace> = spec
                .all_reflections()
                .iter()
                .map(embed_reflection)
                .collect();
            let total = images.len();
            images.sort();
            images.dedup();
            assert_eq!(images.len(), total);
        }
    }

    #[test]
    fn embedding_reports_pass() {
        let budget = Budget::default();
        for spec in [a(4), a(5), b(3)] {
            let l = NcLattice::build(spec, &budget).unwrap();
            let report = verify_embedding(&l, &budget).unwrap();
            assert!(report.all_pass(), "{spec}: {report:?}");
            assert_eq!(report.image_size, l.len());
        }
        // Non-surjectivity numbers for S_4 over F_2^3: 14 of 16 subspaces.
        let l = NcLattice::build(a(4), &budget).unwrap();
        let report = verify_embedding(&l, &budget).unwrap();
        assert_eq!((report.image_size, report.total_subspaces), (14, 16));
    }

    #[test]
    fn rank_two_complexes_fill_their_buildings() {
        // At rank <= 2 the image is all of L(F_p^d): NC(S_3) and NC(B_2) are
        // themselves buildings, so non-surjectivity only starts at rank 3.
        let budget = Budget::default();
        for (spec, size) in [(a(3), 5usize), (b(2), 6)] {
            let l = NcLattice::build(spec, &budget).unwrap();
            let report = verify_embedding(&l, &budget).unwrap();
            assert!(report.injective && report.rank_preserving && report.order_preserving);
            assert!(!report.non_surjective);
            assert_eq!((report.image_size, report.total_subspaces), (size, size));
        }
    }

    #[test]
    fn top_image_is_everything() {
        let budget = Budget::default();
        let l = NcLattice::build(a(4), &budget).unwrap();
        let images = embed_all(&l);
        assert_eq!(images[l.top() as usize].dim(), 3);
        assert_eq!(images[l.bottom() as usize].dim(), 0);
        assert_eq!(embed_element(&l, l.top()), images[l.top() as usize]);
    }

    #[test]
    fn word_independence_small() {
        let budget = Budget::default();
        for spec in [a(4), b(2)] {
            let l = NcLattice::build(spec, &budget).unwrap();
            assert!(word_independence_holds(&l, &budget).unwrap());
        }
    }

    #[test]
    fn join_compatibility_small() {
        let budget = Budget::default();
        for spec in [a(4), b(3)] {
            let l = NcLattice::build(spec, &budget).unwrap();
            assert!(join_compatibility_holds(&l));
        }
    }

    #[test]
    fn apartment_coherence_small() {
        let budget = Budget::default();
        for spec in [a(4), a(5), a(6), b(3), b(4)] {
            let l = NcLattice::build(spec, &budget).unwrap();
            assert!(nc_apartment_check(&l, &budget).unwrap());
        }
    }

    #[test]
    fn dot_export_mentions_flag_labels() {
        let budget = Budget::default();
        let dot = building_chamber_graph_dot(2, 3, &budget).unwrap();
        assert!(dot.starts_with("graph building {"));
        assert!(dot.contains('|'), "labels are U1|U2 lists");
    }
}
