//! The matroid of an arrangement, labeled matroid equality, and the Tutte
//! polynomial computed by two independent algorithms that must agree.

use std::collections::HashMap;

use itertools::Itertools;

use crate::arrangement::Arrangement;
use crate::error::Error;
use crate::linalg::SpanBuilder;
use crate::scalar::{from_usize, Scalar};

/// Maximum ground-set size; the rank table is precomputed over all subsets.
pub const MAX_GROUND: usize = 16;

/// Rank oracle for the matroid of an arrangement.
///
/// The ground set consists of the hyperplane labels followed by one trailing
/// label per loop; loops have rank zero. Ranks of all subsets are
/// precomputed, so queries are table lookups.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatroidOracle {
    ground: usize,
    ranks: Vec<u8>,
}

impl MatroidOracle {
    pub fn from_arrangement<T: Scalar>(a: &Arrangement<T>) -> Result<Self, Error> {
        let ground = a.n() + a.loops();
        if ground > MAX_GROUND {
            return Err(Error::GroundSetTooLarge { n: ground });
        }
        let n = a.n();
        let form_bits = (1usize << n) - 1;
        let mut ranks = vec![0u8; 1usize << ground];
        for mask in 1usize..(1 << ground) {
            let form_mask = mask & form_bits;
            if form_mask != mask {
                // loop labels never contribute rank
                ranks[mask] = ranks[form_mask];
                continue;
            }
            let mut builder = SpanBuilder::new(a.dim());
            for i in 0..n {
                if mask & (1 << i) != 0 {
                    builder.push(a.form(i).to_vec());
                }
            }
            ranks[mask] = builder.rank() as u8;
        }
        Ok(MatroidOracle { ground, ranks })
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn rank_mask(&self, mask: usize) -> usize {
        self.ranks[mask] as usize
    }

    pub fn rank_subset(&self, labels: &[usize]) -> usize {
        let mut mask = 0usize;
        for &l in labels {
            assert!(l < self.ground, "label out of range");
            mask |= 1 << l;
        }
        self.rank_mask(mask)
    }

    /// Rank of the whole ground set.
    pub fn rank(&self) -> usize {
        self.rank_mask((1 << self.ground) - 1)
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.rank_mask(1 << e) == 0
    }

    pub fn is_coloop(&self, e: usize) -> bool {
        let full = (1 << self.ground) - 1;
        self.rank_mask(full & !(1 << e)) < self.rank()
    }

    /// All bases as label bitmasks, ascending.
    pub fn bases(&self) -> Vec<usize> {
        let r = self.rank();
        (0..self.ground)
            .combinations(r)
            .map(|c| c.iter().fold(0usize, |m, &i| m | (1 << i)))
            .filter(|&m| self.rank_mask(m) == r)
            .collect()
    }

    /// Number of independent sets (the empty set included).
    pub fn independent_set_count(&self) -> usize {
        (0usize..1 << self.ground)
            .filter(|&m| self.rank_mask(m) as u32 == m.count_ones())
            .count()
    }
}

/// True iff the two arrangements have identical rank functions under the
/// identity labeling.
pub fn same_matroid<T: Scalar>(a1: &Arrangement<T>, a2: &Arrangement<T>) -> Result<bool, Error> {
    let g1 = a1.n() + a1.loops();
    let g2 = a2.n() + a2.loops();
    if g1 != g2 {
        return Err(Error::GroundSizeMismatch {
            left: g1,
            right: g2,
        });
    }
    let o1 = MatroidOracle::from_arrangement(a1)?;
    let o2 = MatroidOracle::from_arrangement(a2)?;
    Ok(o1 == o2)
}

/// Brute-force isomorphism search over label permutations, for small ground
/// sets only. Labeled equality is what the library uses everywhere else;
/// this exists for exploratory comparisons.
pub fn isomorphic_matroids(o1: &MatroidOracle, o2: &MatroidOracle) -> Result<bool, Error> {
    if o1.ground != o2.ground {
        return Err(Error::GroundSizeMismatch {
            left: o1.ground,
            right: o2.ground,
        });
    }
    if o1.ground > 9 {
        return Err(Error::GroundSetTooLarge { n: o1.ground });
    }
    if o1.rank() != o2.rank() {
        return Ok(false);
    }
    let n = o1.ground;
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn search(
        o1: &MatroidOracle,
        o2: &MatroidOracle,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        depth: usize,
    ) -> bool {
        let n = image.len();
        if depth == n {
            return true;
        }
        'candidates: for cand in 0..n {
            if used[cand] {
                continue;
            }
            image[depth] = cand;
            // check every subset of 0..=depth that contains the new label
            for sub in 0..(1usize << depth) {
                let mask1 = sub | (1 << depth);
                let mut mask2 = 1usize << cand;
                for (i, &img) in image.iter().enumerate().take(depth) {
                    if sub & (1 << i) != 0 {
                        mask2 |= 1 << img;
                    }
                }
                if o1.rank_mask(mask1) != o2.rank_mask(mask2) {
                    image[depth] = usize::MAX;
                    continue 'candidates;
                }
            }
            used[cand] = true;
            if search(o1, o2, image, used, depth + 1) {
                return true;
            }
            used[cand] = false;
            image[depth] = usize::MAX;
        }
        false
    }
    Ok(search(o1, o2, &mut image, &mut used, 0))
}

/// Tutte polynomial as a dense integer coefficient matrix: entry `(i, j)` is
/// the coefficient of `x^i y^j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TuttePolynomial {
    coeffs: Vec<Vec<u64>>,
}

impl TuttePolynomial {
    fn zero() -> Self {
        TuttePolynomial { coeffs: vec![] }
    }

    fn one() -> Self {
        TuttePolynomial {
            coeffs: vec![vec![1]],
        }
    }

    fn monomial(i: usize, j: usize) -> Self {
        let mut coeffs = vec![vec![0u64; j + 1]; i + 1];
        coeffs[i][j] = 1;
        TuttePolynomial { coeffs }
    }

    fn add(&self, other: &Self) -> Self {
        let rows = self.coeffs.len().max(other.coeffs.len());
        let cols = self
            .coeffs
            .iter()
            .chain(other.coeffs.iter())
            .map(|r| r.len())
            .max()
            .unwrap_or(0);
        let mut coeffs = vec![vec![0u64; cols]; rows];
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                coeffs[i][j] += c;
            }
        }
        for (i, row) in other.coeffs.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                coeffs[i][j] += c;
            }
        }
        TuttePolynomial { coeffs }
    }

    fn shift_x(&self) -> Self {
        let mut coeffs = vec![vec![0u64; self.coeffs.first().map_or(0, |r| r.len())]];
        coeffs.extend(self.coeffs.iter().cloned());
        TuttePolynomial { coeffs }.trim()
    }

    fn shift_y(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|row| {
                let mut r = vec![0u64];
                r.extend(row.iter().copied());
                r
            })
            .collect();
        TuttePolynomial { coeffs }.trim()
    }

    fn trim(mut self) -> Self {
        let cols = self
            .coeffs
            .iter()
            .map(|row| row.iter().rposition(|&c| c != 0).map_or(0, |p| p + 1))
            .max()
            .unwrap_or(0);
        while self
            .coeffs
            .last()
            .is_some_and(|row| row.iter().all(|&c| c == 0))
        {
            self.coeffs.pop();
        }
        for row in &mut self.coeffs {
            row.resize(cols.max(1), 0);
        }
        self
    }

    /// Coefficient of `x^i y^j`.
    pub fn coefficient(&self, i: usize, j: usize) -> u64 {
        self.coeffs
            .get(i)
            .and_then(|row| row.get(j))
            .copied()
            .unwrap_or(0)
    }

    pub fn coefficients(&self) -> &[Vec<u64>] {
        &self.coeffs
    }

    pub fn x_degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn y_degree(&self) -> usize {
        self.coeffs.first().map_or(0, |r| r.len().saturating_sub(1))
    }

    /// Evaluates the polynomial at an exact point.
    pub fn eval<T: Scalar>(&self, x: &T, y: &T) -> T {
        let mut acc = T::zero();
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let mut term: T = from_usize(c as usize);
                for _ in 0..i {
                    term = term * x.clone();
                }
                for _ in 0..j {
                    term = term * y.clone();
                }
                acc = acc + term;
            }
        }
        acc
    }
}

impl std::fmt::Display for TuttePolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut terms = Vec::new();
        for i in (0..self.coeffs.len()).rev() {
            for j in (0..self.coeffs[i].len()).rev() {
                let c = self.coeffs[i][j];
                if c == 0 {
                    continue;
                }
                let mut term = String::new();
                if c != 1 || (i == 0 && j == 0) {
                    term.push_str(&c.to_string());
                }
                if i > 0 {
                    if !term.is_empty() {
                        term.push('*');
                    }
                    term.push('x');
                    if i > 1 {
                        term.push_str(&format!("^{i}"));
                    }
                }
                if j > 0 {
                    if !term.is_empty() {
                        term.push('*');
                    }
                    term.push('y');
                    if j > 1 {
                        term.push_str(&format!("^{j}"));
                    }
                }
                terms.push(term);
            }
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", terms.join(" + "))
    }
}

/// Tutte polynomial of the matroid, computed by deletion-contraction with
/// memoization and independently by basis-activity enumeration; the two
/// results are checked against each other before returning.
pub fn tutte(oracle: &MatroidOracle) -> TuttePolynomial {
    let by_recursion = tutte_deletion_contraction(oracle);
    let by_activities = tutte_basis_activities(oracle);
    assert_eq!(
        by_recursion, by_activities,
        "deletion-contraction and basis-activity enumeration disagree"
    );
    by_recursion
}

/// Deletion-contraction with memoization.
///
/// A minor is identified by the pair (surviving labels, contracted labels):
/// the surviving set alone does not determine the minor (deleting vs
/// contracting one of two parallel elements leaves the same survivor with
/// different ranks), so both masks key the memo table.
pub fn tutte_deletion_contraction(oracle: &MatroidOracle) -> TuttePolynomial {
    let mut memo: HashMap<(usize, usize), TuttePolynomial> = HashMap::new();
    let full = (1usize << oracle.ground_size()) - 1;
    recurse(oracle, full, 0, &mut memo)
}

fn recurse(
    oracle: &MatroidOracle,
    alive: usize,
    contracted: usize,
    memo: &mut HashMap<(usize, usize), TuttePolynomial>,
) -> TuttePolynomial {
    if alive == 0 {
        return TuttePolynomial::one();
    }
    if let Some(hit) = memo.get(&(alive, contracted)) {
        return hit.clone();
    }
    // branch on the highest surviving label
    let e = usize::BITS as usize - 1 - alive.leading_zeros() as usize;
    let bit = 1usize << e;
    let rest = alive & !bit;
    let rank_c = oracle.rank_mask(contracted);
    let is_loop = oracle.rank_mask(contracted | bit) == rank_c;
    let minor_rank = oracle.rank_mask(alive | contracted) - rank_c;
    let rank_without = oracle.rank_mask(rest | contracted) - rank_c;
    let is_coloop = !is_loop && rank_without < minor_rank;
    let result = if is_loop {
        recurse(oracle, rest, contracted, memo).shift_y()
    } else if is_coloop {
        recurse(oracle, rest, contracted | bit, memo).shift_x()
    } else {
        let deleted = recurse(oracle, rest, contracted, memo);
        let contracted_branch = recurse(oracle, rest, contracted | bit, memo);
        deleted.add(&contracted_branch)
    };
    memo.insert((alive, contracted), result.clone());
    result
}

/// Basis-activity enumeration: sum of `x^(internal activity) y^(external
/// activity)` over all bases, activities taken with respect to the label
/// order.
pub fn tutte_basis_activities(oracle: &MatroidOracle) -> TuttePolynomial {
    let n = oracle.ground_size();
    let full_rank = oracle.rank();
    let mut acc = TuttePolynomial::zero();
    for basis_mask in oracle.bases() {
        let mut internal = 0usize;
        // e in B is internally active when no smaller f outside B keeps
        // (B - e) + f a basis
        for e in 0..n {
            if basis_mask & (1 << e) == 0 {
                continue;
            }
            let without = basis_mask & !(1 << e);
            let mut active = true;
            for f in 0..e {
                if basis_mask & (1 << f) != 0 {
                    continue;
                }
                if oracle.rank_mask(without | (1 << f)) == full_rank {
                    active = false;
                    break;
                }
            }
            if active {
                internal += 1;
            }
        }
        let mut external = 0usize;
        // e outside B is externally active when no smaller f in B keeps
        // (B - f) + e a basis
        for e in 0..n {
            if basis_mask & (1 << e) != 0 {
                continue;
            }
            let with = basis_mask | (1 << e);
            let mut active = true;
            for f in 0..e {
                if basis_mask & (1 << f) == 0 {
                    continue;
                }
                if oracle.rank_mask(with & !(1 << f)) == full_rank {
                    active = false;
                    break;
                }
            }
            if active {
                external += 1;
            }
        }
        acc = acc.add(&TuttePolynomial::monomial(internal, external));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn qs(ns: &[i64]) -> Vec<Q> {
        ns.iter().map(|&n| q(n)).collect()
    }

    fn u23() -> Arrangement<Q> {
        Arrangement::new(2, vec![qs(&[1, 0]), qs(&[0, 1]), qs(&[1, 1])]).unwrap()
    }

    fn six_form_rank4() -> Arrangement<Q> {
        Arrangement::new(
            4,
            vec![
                qs(&[1, 0, 0, 0]),
                qs(&[0, 1, 0, 0]),
                qs(&[0, 0, 1, 0]),
                qs(&[1, 0, 0, -1]),
                qs(&[0, 1, 0, -1]),
                qs(&[0, 0, 1, -1]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn uniform_rank_function() {
        let o = MatroidOracle::from_arrangement(&u23()).unwrap();
        for mask in 0usize..8 {
            assert_eq!(o.rank_mask(mask), (mask.count_ones() as usize).min(2));
        }
    }

    #[test]
    fn parallel_labels() {
        let a = Arrangement::new(2, vec![qs(&[1, 0]), qs(&[2, 0])]).unwrap();
        let o = MatroidOracle::from_arrangement(&a).unwrap();
        assert_eq!(o.rank_subset(&[0, 1]), 1);
    }

    /// Graphic rank oracle via spanning-forest counting: rank = vertices
    /// touched minus number of components.
    fn graphic_rank(edges: &[(usize, usize)], vertex_count: usize, mask: usize) -> usize {
        let mut parent: Vec<usize> = (0..vertex_count).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let root = find(parent, parent[x]);
                parent[x] = root;
            }
            parent[x]
        }
        let mut rank = 0;
        for (i, &(u, v)) in edges.iter().enumerate() {
            if mask & (1 << i) == 0 {
                continue;
            }
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[ru] = rv;
                rank += 1;
            }
        }
        rank
    }

    #[test]
    fn six_form_arrangement_is_graphic() {
        // complete bipartite graph on parts {a1, a2} and {b1, b2, b3};
        // edge i*3+j joins b(j+1) to a(i+1), matching the form labels
        let edges = [(2, 0), (3, 0), (4, 0), (2, 1), (3, 1), (4, 1)];
        let o = MatroidOracle::from_arrangement(&six_form_rank4()).unwrap();
        for mask in 0usize..64 {
            assert_eq!(
                o.rank_mask(mask),
                graphic_rank(&edges, 5, mask),
                "mask {mask}"
            );
        }
        assert_eq!(o.rank(), 4);
    }

    #[test]
    fn same_matroid_checks() {
        let a = u23();
        assert!(same_matroid(&a, &a).unwrap());
        let parallel = Arrangement::new(2, vec![qs(&[1, 0]), qs(&[2, 0]), qs(&[0, 1])]).unwrap();
        assert!(!same_matroid(&a, &parallel).unwrap());
        assert_eq!(
            same_matroid(&a, &parallel).unwrap(),
            same_matroid(&parallel, &a).unwrap()
        );
        let smaller = a.delete(0).unwrap();
        assert!(matches!(
            same_matroid(&a, &smaller),
            Err(Error::GroundSizeMismatch { .. })
        ));
    }

    #[test]
    fn isomorphism_search() {
        let a = u23();
        let reordered = Arrangement::new(2, vec![qs(&[1, 1]), qs(&[1, 0]), qs(&[0, 1])]).unwrap();
        let o1 = MatroidOracle::from_arrangement(&a).unwrap();
        let o2 = MatroidOracle::from_arrangement(&reordered).unwrap();
        assert!(isomorphic_matroids(&o1, &o2).unwrap());
        let parallel = Arrangement::new(2, vec![qs(&[1, 0]), qs(&[2, 0]), qs(&[0, 1])]).unwrap();
        let o3 = MatroidOracle::from_arrangement(&parallel).unwrap();
        assert!(!isomorphic_matroids(&o1, &o3).unwrap());
    }

    #[test]
    fn isomorphism_search_is_capped() {
        let forms = (0..10).map(|i| qs(&[1, i])).collect::<Vec<_>>();
        let a = Arrangement::new(2, forms).unwrap();
        let o = MatroidOracle::from_arrangement(&a).unwrap();
        assert!(matches!(
            isomorphic_matroids(&o, &o),
            Err(Error::GroundSetTooLarge { n: 10 })
        ));
    }

    #[test]
    fn tutte_of_single_elements() {
        let coloop = Arrangement::new(1, vec![qs(&[1])]).unwrap();
        let t = tutte(&MatroidOracle::from_arrangement(&coloop).unwrap());
        assert_eq!(t.to_string(), "x");

        let loop_only = Arrangement::<Q>::with_loops(1, vec![], 1).unwrap();
        let t = tutte(&MatroidOracle::from_arrangement(&loop_only).unwrap());
        assert_eq!(t.to_string(), "y");
    }

    #[test]
    fn tutte_of_u23() {
        let t = tutte(&MatroidOracle::from_arrangement(&u23()).unwrap());
        assert_eq!(t.to_string(), "x^2 + x + y");
        assert_eq!(t.eval(&q(1), &q(1)), q(3));
        assert_eq!(t.eval(&q(2), &q(1)), q(7));
        assert_eq!(t.eval(&q(2), &q(2)), q(8));
    }

    #[test]
    fn tutte_of_six_form_arrangement() {
        let o = MatroidOracle::from_arrangement(&six_form_rank4()).unwrap();
        let t = tutte(&o);
        assert_eq!(t.eval(&q(1), &q(1)), q(12)); // spanning trees of the bipartite graph
        assert_eq!(t.eval(&q(1), &q(1)), from_usize(o.bases().len()));
        assert_eq!(t.eval(&q(2), &q(1)), from_usize(o.independent_set_count()));
        assert_eq!(t.eval(&q(2), &q(2)), q(64));
    }

    #[test]
    fn rank_submodularity_samples() {
        let o = MatroidOracle::from_arrangement(&six_form_rank4()).unwrap();
        for a in 0usize..64 {
            for b in 0usize..64 {
                let lhs = o.rank_mask(a | b) + o.rank_mask(a & b);
                let rhs = o.rank_mask(a) + o.rank_mask(b);
                assert!(lhs <= rhs);
            }
        }
    }
}
