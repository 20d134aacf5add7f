//! The `k`-th power Paley digraph `G_k(q)`, its induced subgraphs `H_k(q)`
//! (on `S_k`, the out-neighbours of `0`) and `H¹_k(q)` (the out-neighbours
//! of `1` inside `H_k(q)`), and transitive subtournament counts.
//!
//! Vertices of `G_k(q)` are field elements in polynomial-index order, so
//! vertex `i` of `G` is `f.from_poly_index(i)`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::chars::{aggregates, Character};
use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::ff::{valid_modulus, FieldElem, FieldTable};
use crate::hyp::{f2f1_charsum, TupleTable};
use crate::report::Report;

/// A digraph on field elements with one adjacency bitset per vertex.
#[derive(Clone, Debug)]
pub struct Digraph {
    vertices: Vec<FieldElem>,
    words: usize,
    out: Vec<Vec<u64>>,
}

impl Digraph {
    fn from_predicate(
        vertices: Vec<FieldElem>,
        arc: impl Fn(FieldElem, FieldElem) -> bool + Sync,
    ) -> Digraph {
        let n = vertices.len();
        let words = n.div_ceil(64).max(1);
        let out = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut row = vec![0u64; words];
                for (j, &b) in vertices.iter().enumerate() {
                    if i != j && arc(vertices[i], b) {
                        row[j / 64] |= 1 << (j % 64);
                    }
                }
                row
            })
            .collect();
        Digraph {
            vertices,
            words,
            out,
        }
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[FieldElem] {
        &self.vertices
    }

    pub fn position(&self, v: FieldElem) -> Option<usize> {
        self.vertices.iter().position(|&x| x == v)
    }

    pub fn has_arc(&self, i: usize, j: usize) -> bool {
        self.out[i][j / 64] >> (j % 64) & 1 == 1
    }

    pub fn out_degree(&self, i: usize) -> usize {
        self.out[i].iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn in_degree(&self, j: usize) -> usize {
        (0..self.order()).filter(|&i| self.has_arc(i, j)).count()
    }

    pub fn arc_count(&self) -> usize {
        (0..self.order()).map(|i| self.out_degree(i)).sum()
    }

    pub fn out_neighbours(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.order()).filter(move |&j| self.has_arc(i, j))
    }

    /// The subgraph induced on the given vertex positions, in that order.
    pub fn induced(&self, positions: &[usize]) -> Digraph {
        let vertices = positions.iter().map(|&i| self.vertices[i]).collect();
        let n = positions.len();
        let words = n.div_ceil(64).max(1);
        let out = positions
            .iter()
            .map(|&i| {
                let mut row = vec![0u64; words];
                for (b, &j) in positions.iter().enumerate() {
                    if self.has_arc(i, j) {
                        row[b / 64] |= 1 << (b % 64);
                    }
                }
                row
            })
            .collect();
        Digraph {
            vertices,
            words,
            out,
        }
    }

    fn and_count(&self, a: &[u64], b: &[u64]) -> u64 {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x & y).count_ones() as u64)
            .sum()
    }

    /// Number of `m`-vertex subsets inducing a transitive tournament,
    /// `m ∈ {3, 4}`. Each such subset has exactly one ordering
    /// `v_1 → v_2 → ... → v_m` with `v_i → v_j` for all `i < j`, and those
    /// chains are what gets counted.
    pub fn count_transitive(&self, m: usize) -> Result<u64> {
        match m {
            3 => Ok((0..self.order())
                .into_par_iter()
                .map(|a| {
                    self.out_neighbours(a)
                        .map(|b| self.and_count(&self.out[a], &self.out[b]))
                        .sum::<u64>()
                })
                .sum()),
            4 => Ok((0..self.order())
                .into_par_iter()
                .map(|a| {
                    let mut total = 0u64;
                    let mut common = vec![0u64; self.words];
                    for b in self.out_neighbours(a) {
                        for (w, (x, y)) in
                            common.iter_mut().zip(self.out[a].iter().zip(&self.out[b]))
                        {
                            *w = x & y;
                        }
                        for c in (0..self.order()).filter(|&c| common[c / 64] >> (c % 64) & 1 == 1)
                        {
                            total += self.and_count(&common, &self.out[c]);
                        }
                    }
                    total
                })
                .sum()),
            _ => Err(Error::UnsupportedOrder(m)),
        }
    }

    /// `true` iff some pair of vertices is joined in both directions.
    pub fn has_two_cycle(&self) -> bool {
        (0..self.order()).any(|i| self.out_neighbours(i).any(|j| self.has_arc(j, i)))
    }

    /// `true` iff every pair of distinct vertices is joined in exactly one
    /// direction.
    pub fn is_tournament(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| (i + 1..n).all(|j| self.has_arc(i, j) != self.has_arc(j, i)))
    }
}

impl PartialEq for Digraph {
    fn eq(&self, other: &Digraph) -> bool {
        self.vertices == other.vertices && self.out == other.out
    }
}

fn check_valid(f: &FieldTable, k: u32) -> Result<()> {
    if !valid_modulus(f.order() as u64, k) {
        return Err(Error::InvalidParameters {
            q: f.order() as u64,
            k,
        });
    }
    Ok(())
}

fn in_sk(k: u32, x: FieldElem) -> bool {
    x.log().is_some_and(|m| m % k == 0)
}

/// `G_k(q)`: `a → b` iff `b - a ∈ S_k`.
pub fn build_g(f: &FieldTable, k: u32) -> Result<Digraph> {
    check_valid(f, k)?;
    let vertices = f.elements().collect();
    Ok(Digraph::from_predicate(vertices, |a, b| {
        in_sk(k, f.sub(b, a))
    }))
}

/// `H_k(q)`: the subgraph induced on the out-neighbours of `0`.
pub fn build_h(g: &Digraph, f: &FieldTable) -> Digraph {
    let zero = g.position(f.zero()).expect("0 is a vertex");
    let nbrs: Vec<usize> = g.out_neighbours(zero).collect();
    g.induced(&nbrs)
}

/// `H¹_k(q)`: the subgraph of `H_k(q)` induced on the out-neighbours of `1`.
pub fn build_h1(h: &Digraph, f: &FieldTable) -> Digraph {
    let one = h.position(f.one()).expect("1 is a vertex of H");
    let nbrs: Vec<usize> = h.out_neighbours(one).collect();
    h.induced(&nbrs)
}

/// Vertices of `H¹_k(q)`: `b ∈ S_k` with `b - 1 ∈ S_k`.
pub fn h1_vertices(f: &FieldTable, k: u32) -> Vec<FieldElem> {
    let g = f.group_order();
    (0..g)
        .step_by(k as usize)
        .filter(|&m| {
            f.one_minus_log(m)
                .is_some_and(|l| (l + f.minus_one_log()).is_multiple_of(k))
        })
        .map(|m| f.from_log(m as u64))
        .collect()
}

/// `#E(H_k(q))` by residue-class lookups, without building the graph.
/// Multiplication by `a ∈ S_k` is an automorphism of `H_k(q)`, so this is
/// `|S_k|` times the out-degree of `1`.
pub fn h_edge_count(f: &FieldTable, k: u32) -> u64 {
    (f.group_order() / k) as u64 * h1_vertices(f, k).len() as u64
}

/// `#E(H¹_k(q))` by residue-class lookups, stopping at the first edge when
/// `stop_at_first` is set.
pub fn h1_edge_count(f: &FieldTable, k: u32, stop_at_first: bool) -> u64 {
    let verts = h1_vertices(f, k);
    let logs: Vec<u32> = verts.iter().map(|v| v.log().expect("nonzero")).collect();
    let g = f.group_order();
    let mut count = 0u64;
    for (i, &la) in logs.iter().enumerate() {
        for (j, &lb) in logs.iter().enumerate() {
            if i == j {
                continue;
            }
            // b - a = a (b/a - 1) = -a (1 - b/a)
            let l = f.one_minus_log((lb + g - la) % g).expect("b != a");
            if (la + l + f.minus_one_log()).is_multiple_of(k) {
                count += 1;
                if stop_at_first {
                    return count;
                }
            }
        }
    }
    count
}

/// The `k/2`-coloured tournament `P_k(q)` on `F_q`: for each pair `{a, b}`
/// the arc `a → b` with colour `i` where `b - a ∈ ω^i S_k`, `0 ≤ i < k/2`.
#[derive(Clone, Debug)]
pub struct ColoredTournament {
    n: usize,
    colours: u32,
    /// `colour[a * n + b]`: the colour of the arc `a → b`, or `u8::MAX`.
    colour: Vec<u8>,
}

pub const NO_ARC: u8 = u8::MAX;

impl ColoredTournament {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn colours(&self) -> u32 {
        self.colours
    }

    /// Colour of the arc from vertex `a` to vertex `b`, if that arc exists.
    pub fn arc(&self, a: usize, b: usize) -> Option<u32> {
        let c = self.colour[a * self.n + b];
        (c != NO_ARC).then_some(c as u32)
    }

    /// The digraph formed by the arcs of one colour.
    pub fn colour_class(&self, f: &FieldTable, c: u32) -> Digraph {
        let vertices: Vec<FieldElem> = f.elements().collect();
        let n = self.n;
        Digraph::from_predicate(vertices, |a, b| {
            let (i, j) = (f.to_poly_index(a) as usize, f.to_poly_index(b) as usize);
            self.colour[i * n + j] == c as u8
        })
    }

    /// `true` iff every pair carries exactly one arc with a colour below
    /// `k/2`.
    pub fn is_complete(&self) -> bool {
        let n = self.n;
        (0..n).all(|a| {
            self.arc(a, a).is_none()
                && (a + 1..n).all(|b| match (self.arc(a, b), self.arc(b, a)) {
                    (Some(c), None) | (None, Some(c)) => c < self.colours,
                    _ => false,
                })
        })
    }

    /// One line `a b colour` per arc, vertices as polynomial indices.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if let Some(c) = self.arc(a, b) {
                    writeln!(s, "{a} {b} {c}").expect("write to String");
                }
            }
        }
        s
    }
}

pub fn multicolor_tournament(f: &FieldTable, k: u32) -> Result<ColoredTournament> {
    check_valid(f, k)?;
    if k / 2 >= NO_ARC as u32 {
        return Err(Error::Unsupported(format!("{} colours", k / 2)));
    }
    let n = f.order() as usize;
    let half = k / 2;
    let mut colour = vec![NO_ARC; n * n];
    for (i, a) in f.elements().enumerate() {
        for (j, b) in f.elements().enumerate() {
            if let Some(m) = f.sub(b, a).log() {
                let c = m % k;
                if c < half {
                    colour[i * n + j] = c as u8;
                }
            }
        }
    }
    Ok(ColoredTournament {
        n,
        colours: half,
        colour,
    })
}

/// `true` iff some colour class of `P_k(q)` contains a transitive
/// subtournament of order `m`.
pub fn has_monochromatic_transitive(f: &FieldTable, k: u32, m: usize) -> Result<bool> {
    let t = multicolor_tournament(f, k)?;
    for c in 0..t.colours() {
        if t.colour_class(f, c).count_transitive(m)? > 0 {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The six structural statements about `H_k(q)` and `H¹_k(q)`, each
/// measured on the graphs and compared with its character-sum formula.
pub fn verify_subgraph_formulas(f: &FieldTable, k: u32) -> Result<Report> {
    check_valid(f, k)?;
    let q = f.order() as i64;
    let kk = k as i64;
    let g = build_g(f, k)?;
    let h = build_h(&g, f);
    let h1 = build_h1(&h, f);
    let agg = aggregates(f, k)?;
    let j0 = agg.j0;
    let tag = format!("(q, k) = ({q}, {k})");
    let mut report = Report::new();

    let expected_deg = (q - 1) / kk;
    let g_regular = (0..g.order())
        .all(|i| g.out_degree(i) as i64 == expected_deg && g.in_degree(i) as i64 == expected_deg);
    report.push(
        format!("G is {expected_deg}-regular with no 2-cycles, {tag}"),
        g_regular && !g.has_two_cycle() && g.arc_count() as i64 == q * (q - 1) / kk,
        format!("{} arcs", g.arc_count()),
    );

    report.push(
        format!("(a) #V(H) = (q - 1)/k, {tag}"),
        h.order() as i64 == (q - 1) / kk,
        format!("{}", h.order()),
    );

    let deg_ok = j0 % (kk * kk) == 0
        && (0..h.order()).all(|i| {
            h.out_degree(i) as i64 * kk * kk == j0 && h.in_degree(i) as i64 * kk * kk == j0
        });
    report.push(
        format!("(b) in/out-degrees in H equal J0/k^2, {tag}"),
        deg_ok,
        format!("J0 = {j0}"),
    );

    report.push(
        format!("(c) #E(H) = (q - 1) J0 / k^3, {tag}"),
        h.arc_count() as i64 * kk.pow(3) == (q - 1) * j0,
        format!("{}", h.arc_count()),
    );

    report.push(
        format!("(d) #V(H1) = J0 / k^2, {tag}"),
        h1.order() as i64 * kk * kk == j0,
        format!("{}", h1.order()),
    );

    let chi = Character::of_order(f, k)?;
    let mut e_ok = true;
    let mut e_detail = String::new();
    for (i, &a) in h1.vertices().iter().enumerate() {
        let mut total = CycNum::from_int(0);
        for t1 in 0..kk {
            for t2 in 0..kk {
                for t3 in 0..kk {
                    let v = f2f1_charsum(f, chi.pow(t1), chi.pow(t2), chi.pow(t3), a);
                    let sign = if (t2 + t3) % 2 == 0 { 1 } else { -1 };
                    total += &v.num.scale(&BigInt::from(sign));
                }
            }
        }
        let measured = h1.out_degree(i) as i64;
        if total.to_i64() != Ok(measured * kk.pow(3)) {
            e_ok = false;
            let _ = write!(
                e_detail,
                "vertex {}: {total} vs {} ",
                f.to_poly_index(a),
                measured * kk.pow(3)
            );
        }
    }
    report.push(
        format!("(e) out-degrees in H1 from 2F1 sums, {tag}"),
        e_ok,
        e_detail,
    );

    let table = TupleTable::new(f, k, f.one())?;
    let total = table.total_signed();
    report.push(
        format!("(f) #E(H1) = k^-5 sum of q^2 3F2, {tag}"),
        total.to_i64() == Ok(h1.arc_count() as i64 * kk.pow(5)),
        format!("#E(H1) = {}, sum = {total}", h1.arc_count()),
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{build_field, build_field_of_order};

    #[test]
    fn paley_tournament_of_order_seven() {
        let f = build_field(7, 1).unwrap();
        let g = build_g(&f, 2).unwrap();
        assert!(g.is_tournament());
        assert!((0..7).all(|i| g.out_degree(i) == 3));
        assert_eq!(g.count_transitive(4).unwrap(), 0);
        assert_eq!(g.count_transitive(3).unwrap(), 21);
    }

    #[test]
    fn three_cycle() {
        let f = build_field(3, 1).unwrap();
        let g = build_g(&f, 2).unwrap();
        assert!(g.has_arc(0, 1) && g.has_arc(1, 2) && g.has_arc(2, 0));
        assert_eq!(g.arc_count(), 3);
        assert_eq!(g.count_transitive(3).unwrap(), 0);
    }

    #[test]
    fn q13_k4_shape() {
        let f = build_field(13, 1).unwrap();
        let g = build_g(&f, 4).unwrap();
        assert_eq!(g.arc_count(), 39);
        assert!(!g.has_two_cycle());
        let h1 = build_h1(&build_h(&g, &f), &f);
        assert_eq!(h1.order(), 0);
    }

    #[test]
    fn h_and_h1_at_q7() {
        let f = build_field(7, 1).unwrap();
        let g = build_g(&f, 2).unwrap();
        let h = build_h(&g, &f);
        let idx: Vec<u32> = h.vertices().iter().map(|&v| f.to_poly_index(v)).collect();
        assert_eq!(idx, vec![1, 2, 4]);
        let h1 = build_h1(&h, &f);
        assert_eq!(h1.order(), 1);
        assert_eq!(h1.arc_count(), 0);
    }

    #[test]
    fn unsupported_order() {
        let f = build_field(7, 1).unwrap();
        let g = build_g(&f, 2).unwrap();
        assert_eq!(g.count_transitive(5), Err(Error::UnsupportedOrder(5)));
    }

    #[test]
    fn invalid_parameters_rejected() {
        let f = build_field(13, 1).unwrap();
        assert!(build_g(&f, 2).is_err());
        assert!(multicolor_tournament(&f, 6).is_err());
    }

    #[test]
    fn lookup_counts_match_graphs() {
        for (q, k) in [
            (7u64, 2u32),
            (11, 2),
            (29, 4),
            (31, 6),
            (41, 8),
            (61, 4),
            (109, 4),
        ] {
            let f = build_field_of_order(q).unwrap();
            let g = build_g(&f, k).unwrap();
            let h = build_h(&g, &f);
            let h1 = build_h1(&h, &f);
            assert_eq!(h_edge_count(&f, k), h.arc_count() as u64);
            let mut verts = h1_vertices(&f, k);
            let mut expected = h1.vertices().to_vec();
            verts.sort();
            expected.sort();
            assert_eq!(verts, expected);
            assert_eq!(h1_edge_count(&f, k, false), h1.arc_count() as u64);
            assert_eq!(h1_edge_count(&f, k, true) > 0, h1.arc_count() > 0);
        }
    }

    #[test]
    fn subgraph_relations() {
        for (q, k) in [(11u64, 2u32), (19, 2), (29, 4), (37, 4), (31, 6), (43, 6)] {
            let f = build_field_of_order(q).unwrap();
            let g = build_g(&f, k).unwrap();
            let h = build_h(&g, &f);
            let h1 = build_h1(&h, &f);
            let (q, kk) = (q, k as u64);
            assert_eq!(g.count_transitive(3).unwrap(), q * h.arc_count() as u64);
            assert_eq!(
                g.count_transitive(4).unwrap(),
                q * h.count_transitive(3).unwrap()
            );
            assert_eq!(
                h.count_transitive(3).unwrap(),
                (q - 1) / kk * h1.arc_count() as u64
            );
            assert_eq!(
                g.count_transitive(4).unwrap(),
                q * (q - 1) / kk * h1.arc_count() as u64
            );
        }
    }

    #[test]
    fn subgraph_formulas_hold() {
        for (q, k) in [(7u64, 2u32), (13, 4), (31, 6)] {
            let f = build_field_of_order(q).unwrap();
            let report = verify_subgraph_formulas(&f, k).unwrap();
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn tournament_colouring() {
        let f = build_field(13, 1).unwrap();
        let t = multicolor_tournament(&f, 4).unwrap();
        assert!(t.is_complete());
        assert_eq!(t.colour_class(&f, 0), build_g(&f, 4).unwrap());
        let lines = t.to_edge_list();
        assert_eq!(lines.lines().count(), 13 * 12 / 2);
        assert!(lines.lines().all(|l| l.split(' ').count() == 3));
    }

    #[test]
    fn monochromatic_t4_iff_k4_positive() {
        for q in [13u64, 29] {
            let f = build_field_of_order(q).unwrap();
            let k4 = build_g(&f, 4).unwrap().count_transitive(4).unwrap();
            assert_eq!(has_monochromatic_transitive(&f, 4, 4).unwrap(), k4 > 0);
        }
    }
}
