//! Central hyperplane arrangements: defining forms, the rho statistic, the
//! intersection-subspace stratification, lines, large vectors, deletion and
//! contraction.

use crate::error::Error;
use crate::linalg::{subspace_sum, Matrix, SpanBuilder};
use crate::scalar::Scalar;

/// A central arrangement: an ordered multiset of nonzero linear forms
/// (covectors) in an `ambient_dim`-dimensional space. Labels are positions.
///
/// Contractions can turn forms into zero covectors; those stop being
/// hyperplanes and are tracked only as a loop count for matroid bookkeeping.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Arrangement<T> {
    dim: usize,
    forms: Vec<Vec<T>>,
    loops: usize,
}

/// An intersection subspace of the arrangement with the set of hyperplanes
/// containing it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Stratum<T> {
    basis: Matrix<T>,
    containing: Vec<usize>,
}

impl<T: Scalar> Stratum<T> {
    /// Canonical RREF basis of the subspace, one row per basis vector.
    pub fn basis(&self) -> &Matrix<T> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Number of hyperplanes containing the subspace.
    pub fn m(&self) -> usize {
        self.containing.len()
    }

    /// Labels of the hyperplanes containing the subspace, ascending.
    pub fn containing_set(&self) -> &[usize] {
        &self.containing
    }

    /// Canonical direction of a line stratum.
    pub fn direction(&self) -> &[T] {
        assert_eq!(self.dim(), 1, "direction is only defined for line strata");
        self.basis.row(0)
    }
}

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b.iter())
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

impl<T: Scalar> Arrangement<T> {
    /// Builds an arrangement from its defining forms. Every form must be a
    /// nonzero covector of length `dim`.
    pub fn new(dim: usize, forms: Vec<Vec<T>>) -> Result<Self, Error> {
        assert!(dim >= 1, "ambient dimension must be at least 1");
        for form in &forms {
            if form.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: form.len(),
                });
            }
            if form.iter().all(|c| c.is_zero()) {
                return Err(Error::ZeroVector);
            }
        }
        Ok(Arrangement {
            dim,
            forms,
            loops: 0,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of hyperplanes (loops excluded).
    pub fn n(&self) -> usize {
        self.forms.len()
    }

    /// Zero forms produced by contractions, kept for matroid bookkeeping.
    pub fn loops(&self) -> usize {
        self.loops
    }

    pub fn forms(&self) -> &[Vec<T>] {
        &self.forms
    }

    pub fn form(&self, label: usize) -> &[T] {
        &self.forms[label]
    }

    /// Number of hyperplanes not containing `h`. Loops never count.
    pub fn rho_of(&self, h: &[T]) -> Result<usize, Error> {
        if h.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: h.len(),
            });
        }
        if h.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroVector);
        }
        Ok(self.forms.iter().filter(|l| !dot(l, h).is_zero()).count())
    }

    /// All intersection subspaces of dimension at least 1, including the
    /// whole space (the empty intersection), deduplicated by canonical
    /// basis and sorted by decreasing dimension.
    pub fn strata(&self) -> Vec<Stratum<T>> {
        assert!(
            self.dim >= 1,
            "stratification needs a positive ambient dimension"
        );
        let ambient = Matrix::identity(self.dim);
        let mut bases: Vec<Matrix<T>> = vec![ambient];
        let mut frontier: Vec<usize> = vec![0];
        while let Some(idx) = frontier.pop() {
            let basis = bases[idx].clone();
            if basis.rows() == 1 {
                continue;
            }
            for form in &self.forms {
                if let Some(cut) = intersect_with_hyperplane(&basis, form) {
                    if !bases.contains(&cut) {
                        bases.push(cut);
                        frontier.push(bases.len() - 1);
                    }
                }
            }
        }
        let mut strata: Vec<Stratum<T>> = bases
            .into_iter()
            .map(|basis| {
                let containing = self.forms_vanishing_on(&basis);
                Stratum { basis, containing }
            })
            .collect();
        strata.sort_by(|a, b| {
            b.dim()
                .cmp(&a.dim())
                .then_with(|| compare_matrices(&a.basis, &b.basis))
        });
        strata
    }

    fn forms_vanishing_on(&self, basis: &Matrix<T>) -> Vec<usize> {
        (0..self.forms.len())
            .filter(|&i| (0..basis.rows()).all(|r| dot(&self.forms[i], basis.row(r)).is_zero()))
            .collect()
    }

    /// The one-dimensional strata.
    pub fn lines(&self) -> Vec<Stratum<T>> {
        self.strata().into_iter().filter(|s| s.dim() == 1).collect()
    }

    /// `rho(A) = min over nonzero h of rho_of(h)`, computed as `n - max m_X`.
    pub fn rho_min(&self) -> usize {
        let max_m = self.strata().iter().map(|s| s.m()).max().unwrap_or(0);
        self.n() - max_m
    }

    /// RREF basis of the span of all vectors lying on the maximum number of
    /// hyperplanes.
    pub fn large_span(&self) -> Matrix<T> {
        let strata = self.strata();
        let max_m = strata.iter().map(|s| s.m()).max().unwrap_or(0);
        let maximal: Vec<&Matrix<T>> = strata
            .iter()
            .filter(|s| s.m() == max_m)
            .map(|s| s.basis())
            .collect();
        subspace_sum(self.dim, &maximal)
    }

    /// Removes the hyperplane with the given label; remaining labels shift
    /// down past it.
    pub fn delete(&self, label: usize) -> Result<Self, Error> {
        if label >= self.forms.len() {
            return Err(Error::InvalidLabel {
                label,
                n: self.forms.len(),
            });
        }
        let mut forms = self.forms.clone();
        forms.remove(label);
        Ok(Arrangement {
            dim: self.dim,
            forms,
            loops: self.loops,
        })
    }

    /// Restricts the arrangement to the hyperplane with the given label.
    ///
    /// The new ambient space is the kernel of the chosen form with its
    /// canonical kernel basis; the returned embedding matrix has that basis
    /// as rows. Remaining forms are composed with the embedding; forms that
    /// restrict to zero are dropped and counted as loops. Multiplicities are
    /// preserved.
    pub fn contract(&self, label: usize) -> Result<(Self, Matrix<T>), Error> {
        if label >= self.forms.len() {
            return Err(Error::InvalidLabel {
                label,
                n: self.forms.len(),
            });
        }
        let cut = Matrix::from_rows(self.dim, vec![self.forms[label].clone()]);
        let embedding = Matrix::from_rows(self.dim, cut.kernel_basis());
        let new_dim = embedding.rows();
        let mut forms = Vec::new();
        let mut loops = self.loops;
        for (i, form) in self.forms.iter().enumerate() {
            if i == label {
                continue;
            }
            let restricted: Vec<T> = (0..new_dim).map(|r| dot(form, embedding.row(r))).collect();
            if restricted.iter().all(|c| c.is_zero()) {
                loops += 1;
            } else {
                forms.push(restricted);
            }
        }
        Ok((
            Arrangement {
                dim: new_dim,
                forms,
                loops,
            },
            embedding,
        ))
    }

    /// Applies an invertible substitution to every form (composition with the
    /// linear map given by `m`). Used by the coordinate-invariance tests.
    pub fn change_coordinates(&self, m: &Matrix<T>) -> Result<Self, Error> {
        assert_eq!(m.rows(), self.dim);
        assert_eq!(m.cols(), self.dim);
        let forms = self
            .forms
            .iter()
            .map(|l| {
                (0..self.dim)
                    .map(|j| {
                        l.iter().enumerate().fold(T::zero(), |acc, (i, c)| {
                            acc + c.clone() * m.get(i, j).clone()
                        })
                    })
                    .collect()
            })
            .collect();
        Arrangement::new(self.dim, forms)
    }

    /// Internal constructor for arrangements carrying loop labels, used by
    /// tests that need a loop without going through a contraction.
    pub fn with_loops(dim: usize, forms: Vec<Vec<T>>, loops: usize) -> Result<Self, Error> {
        let mut a = Arrangement::new(dim, forms)?;
        a.loops = loops;
        Ok(a)
    }
}

/// Intersects the row space of `basis` with the hyperplane `form = 0`.
/// Returns `None` when the subspace already lies inside the hyperplane or
/// the intersection is the origin.
fn intersect_with_hyperplane<T: Scalar>(basis: &Matrix<T>, form: &[T]) -> Option<Matrix<T>> {
    let values: Vec<T> = (0..basis.rows()).map(|r| dot(form, basis.row(r))).collect();
    if values.iter().all(|v| v.is_zero()) {
        return None;
    }
    if basis.rows() == 1 {
        return None;
    }
    let constraint = Matrix::from_rows(basis.rows(), vec![values]);
    let mut builder = SpanBuilder::new(basis.cols());
    for combo in constraint.kernel_basis() {
        let mut vector = vec![T::zero(); basis.cols()];
        for (c, r) in combo.iter().zip(0..basis.rows()) {
            if c.is_zero() {
                continue;
            }
            for (j, value) in basis.row(r).iter().enumerate() {
                vector[j] = vector[j].clone() + c.clone() * value.clone();
            }
        }
        builder.push(vector);
    }
    Some(builder.into_basis())
}

fn compare_matrices<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    let (ra, rb) = (a.rows(), b.rows());
    for i in 0..ra.min(rb) {
        for (x, y) in a.row(i).iter().zip(b.row(i).iter()) {
            match x.partial_cmp(y) {
                Some(Ordering::Equal) | None => continue,
                Some(other) => return other,
            }
        }
    }
    ra.cmp(&rb)
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

    /// Six forms in four variables: y1, y2, y3, y1-y4, y2-y4, y3-y4.
    pub(crate) fn six_form_rank4() -> Arrangement<Q> {
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

    /// Three pairwise-independent forms in the plane.
    pub(crate) fn u23() -> Arrangement<Q> {
        Arrangement::new(2, vec![qs(&[1, 0]), qs(&[0, 1]), qs(&[1, 1])]).unwrap()
    }

    #[test]
    fn construction_rejects_bad_forms() {
        assert_eq!(
            Arrangement::new(3, vec![qs(&[0, 0, 0])]).unwrap_err(),
            Error::ZeroVector
        );
        assert!(matches!(
            Arrangement::new(3, vec![qs(&[1, 0])]).unwrap_err(),
            Error::DimensionMismatch { .. }
        ));
    }

    #[test]
    fn rho_statistics() {
        let a = six_form_rank4();
        assert_eq!(a.rho_of(&qs(&[0, 0, 0, 1])).unwrap(), 3);
        assert_eq!(a.rho_of(&qs(&[1, 0, 0, 0])).unwrap(), 2);
        assert_eq!(a.rho_of(&qs(&[1, 2, 3, 5])).unwrap(), 6);
        assert_eq!(a.rho_of(&qs(&[0, 0, 0, 0])).unwrap_err(), Error::ZeroVector);
        assert_eq!(a.rho_min(), 2);
        assert_eq!(u23().rho_min(), 2);
    }

    #[test]
    fn strata_of_empty_arrangement() {
        let empty = Arrangement::<Q>::new(2, vec![]).unwrap();
        let strata = empty.strata();
        assert_eq!(strata.len(), 1);
        assert_eq!(strata[0].dim(), 2);
        assert_eq!(strata[0].m(), 0);
        assert!(empty.lines().is_empty());
    }

    #[test]
    fn strata_of_six_form_arrangement() {
        let a = six_form_rank4();
        let strata = a.strata();
        let e4 = strata
            .iter()
            .find(|s| s.dim() == 1 && s.basis().row(0) == &qs(&[0, 0, 0, 1])[..])
            .expect("line e4 present");
        assert_eq!(e4.m(), 3);
        assert_eq!(e4.containing_set(), &[0, 1, 2]);
        let e1 = strata
            .iter()
            .find(|s| s.dim() == 1 && s.basis().row(0) == &qs(&[1, 0, 0, 0])[..])
            .expect("line e1 present");
        assert_eq!(e1.m(), 4);
    }

    #[test]
    fn lines_of_u23_are_the_hyperplanes() {
        let lines = u23().lines();
        assert_eq!(lines.len(), 3);
        for line in &lines {
            assert_eq!(line.m(), 1);
        }
    }

    #[test]
    fn lines_of_six_form_arrangement() {
        let a = six_form_rank4();
        let lines = a.lines();
        assert_eq!(lines.len(), 11);
        let directions: Vec<Vec<Q>> = lines.iter().map(|l| l.direction().to_vec()).collect();
        assert!(directions.contains(&qs(&[0, 0, 0, 1])));
        assert!(directions.contains(&qs(&[1, 0, 0, 0])));
        assert!(directions.contains(&qs(&[1, 1, 1, 1])));
    }

    #[test]
    fn large_span_of_six_form_arrangement() {
        let a = six_form_rank4();
        let span = a.large_span();
        assert_eq!(span.rows(), 3);
        assert_eq!(
            span.row_vecs(),
            vec![qs(&[1, 0, 0, 0]), qs(&[0, 1, 0, 0]), qs(&[0, 0, 1, 0])]
        );
    }

    #[test]
    fn deletion() {
        let a = six_form_rank4();
        let d = a.delete(0).unwrap();
        assert_eq!(d.n(), 5);
        assert_eq!(d.dim(), 4);
        assert!(a.delete(6).is_err());
        // removing labels {0, 2} in either order gives the same multiset
        let left = a.delete(0).unwrap().delete(1).unwrap();
        let right = a.delete(2).unwrap().delete(0).unwrap();
        assert_eq!(left, right);
        let u = u23().delete(2).unwrap();
        assert_eq!(u.rho_min(), 1);
    }

    #[test]
    fn contraction_of_six_form_arrangement() {
        let a = six_form_rank4();
        let (c, embedding) = a.contract(0).unwrap();
        assert_eq!(c.dim(), 3);
        assert_eq!(c.n(), 5);
        assert_eq!(c.loops(), 0);
        assert_eq!(embedding.rows(), 3);
        assert_eq!(embedding.cols(), 4);
    }

    #[test]
    fn contraction_of_repeated_form_produces_loop() {
        let a = Arrangement::new(2, vec![qs(&[1, 0]), qs(&[2, 0])]).unwrap();
        let (c, _) = a.contract(0).unwrap();
        assert_eq!(c.n(), 0);
        assert_eq!(c.loops(), 1);
        assert_eq!(c.dim(), 1);
    }

    #[test]
    fn delete_contract_commute_on_invariants() {
        let a = six_form_rank4();
        // contract at 3, delete former label 5 (shifted to 4) vs delete 5 then contract 3
        let (c1, _) = a.contract(3).unwrap();
        let path1 = c1.delete(4).unwrap();
        let d2 = a.delete(5).unwrap();
        let (path2, _) = d2.contract(3).unwrap();
        assert_eq!(path1.rho_min(), path2.rho_min());
        assert_eq!(path1.lines().len(), path2.lines().len());
    }
}
