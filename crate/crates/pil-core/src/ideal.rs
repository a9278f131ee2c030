//! Power ideals of a central arrangement, their graded spans, inverse
//! systems, Hilbert functions, arrangement-monomial span tests and the
//! deletion-contraction dimension bookkeeping.
//!
//! The defining family of the full ideal ranges over every nonzero vector
//! `h` with exponent `rho(h) + k + 1`. Vectors sharing a minimal stratum
//! share the exponent, and over an infinite field the powers of the vectors
//! of a subspace span the whole symmetric power of that subspace, so each
//! stratum `X` contributes the finite family of all degree-`e_X` monomials
//! in a basis of `X`. That reduction is what makes the ideal computable; it
//! is re-validated by randomized membership tests in the test suite.

use itertools::Itertools;

use crate::arrangement::Arrangement;
use crate::arrangement::Stratum;
use crate::error::Error;
use crate::linalg::{Matrix, SpanBuilder};
use crate::matroid::MatroidOracle;
use crate::poly::{
    apolar_weights, expand_power, monomial_count, GradedPoly, GradedSubspace, MonomialBasis,
    OperatorSpace, SolutionSpace,
};
use crate::scalar::Scalar;

/// Which generating family the ideal uses.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Variant {
    /// Powers of vectors from every stratum (the full power ideal).
    Full,
    /// Powers of the canonical line directions only.
    Lines,
}

/// The generators contributed by one stratum: all monomials of degree
/// `exponent` in the stratum's basis vectors, expanded into ambient
/// coordinates.
#[derive(Clone, Debug)]
pub struct StratumGenerators<T> {
    pub stratum: Stratum<T>,
    pub exponent: usize,
    pub polys: Vec<GradedPoly<T, OperatorSpace>>,
}

/// Finite generating family of a power ideal.
#[derive(Clone, Debug)]
pub struct GeneratorFamily<T> {
    items: Vec<StratumGenerators<T>>,
}

impl<T: Scalar> GeneratorFamily<T> {
    pub fn items(&self) -> &[StratumGenerators<T>] {
        &self.items
    }

    pub fn all_polys(&self) -> impl Iterator<Item = &GradedPoly<T, OperatorSpace>> {
        self.items.iter().flat_map(|s| s.polys.iter())
    }

    /// True when some stratum has exponent zero, making the ideal the unit
    /// ideal.
    pub fn contains_unit(&self) -> bool {
        self.items.iter().any(|s| s.exponent == 0)
    }
}

/// Dimensions of the graded pieces of an inverse system, degrees
/// `0 ..= n + k`. Empty when `n + k < 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HilbertFunction {
    pub dims: Vec<usize>,
}

impl HilbertFunction {
    /// Dimension in degree `d`; zero beyond the stored range.
    pub fn get(&self, d: usize) -> usize {
        self.dims.get(d).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }
}

/// A power ideal pinned to an arrangement, an integer shift `k` and a
/// generating variant. Construction validates the standing hypothesis
/// `k >= -(rho + 1)` and builds the finite generator family once.
#[derive(Clone, Debug)]
pub struct IdealSpec<T: Scalar> {
    arrangement: Arrangement<T>,
    k: i64,
    variant: Variant,
    rho: usize,
    generators: GeneratorFamily<T>,
}

impl<T: Scalar> IdealSpec<T> {
    pub fn new(arrangement: Arrangement<T>, k: i64, variant: Variant) -> Result<Self, Error> {
        assert!(
            arrangement.dim() >= 1,
            "ambient dimension must be at least 1"
        );
        let rho = arrangement.rho_min();
        let bound = -(rho as i64 + 1);
        if k < bound {
            return Err(Error::KBelowBound { k, bound });
        }
        let generators = build_generators(&arrangement, k, variant)?;
        Ok(IdealSpec {
            arrangement,
            k,
            variant,
            rho,
            generators,
        })
    }

    pub fn arrangement(&self) -> &Arrangement<T> {
        &self.arrangement
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn rho(&self) -> usize {
        self.rho
    }

    pub fn generators(&self) -> &GeneratorFamily<T> {
        &self.generators
    }

    /// Largest degree in which the inverse system can be nonzero: `n + k`,
    /// or `None` when that is negative.
    pub fn max_degree(&self) -> Option<usize> {
        let m = self.arrangement.n() as i64 + self.k;
        (m >= 0).then_some(m as usize)
    }

    /// Canonical RREF basis of the degree-`d` piece of the ideal.
    pub fn degree_span(&self, d: usize) -> GradedSubspace<T, OperatorSpace> {
        let dim = self.arrangement.dim();
        let cols = monomial_count(dim, d);
        let mut builder = SpanBuilder::new(cols);
        for family in &self.generators.items {
            if builder.is_full() {
                break;
            }
            for g in &family.polys {
                if g.degree() > d {
                    continue;
                }
                let multipliers = MonomialBasis::new(dim, d - g.degree());
                for m in multipliers.iter() {
                    builder.push(g.mul_monomial(m).coeffs().to_vec());
                    if builder.is_full() {
                        break;
                    }
                }
                if builder.is_full() {
                    break;
                }
            }
        }
        GradedSubspace::new(dim, d, builder.into_basis())
    }

    /// Canonical basis of the degree-`d` solutions annihilated by every
    /// generator acting as a differential operator.
    ///
    /// The span matrix is paired against solutions through the factorial
    /// diagonal, so the returned polynomials really do satisfy the
    /// differential equations, not just a plain orthogonality relation.
    pub fn inverse_system_basis(&self, d: usize) -> Vec<GradedPoly<T, SolutionSpace>> {
        let dim = self.arrangement.dim();
        let span = self.degree_span(d);
        let weights = apolar_weights::<T>(dim, d);
        let basis = span.basis();
        let mut scaled_rows = Vec::with_capacity(basis.rows());
        for i in 0..basis.rows() {
            let row: Vec<T> = basis
                .row(i)
                .iter()
                .zip(weights.iter())
                .map(|(a, w)| a.clone() * w.clone())
                .collect();
            scaled_rows.push(row);
        }
        let scaled = Matrix::from_rows(basis.cols(), scaled_rows);
        scaled
            .kernel_basis()
            .into_iter()
            .map(|v| GradedPoly::from_coeffs(dim, d, v))
            .collect()
    }

    /// The degree-`d` inverse system as a canonical row-reduced subspace.
    pub fn inverse_system_subspace(&self, d: usize) -> GradedSubspace<T, SolutionSpace> {
        let dim = self.arrangement.dim();
        let rows: Vec<Vec<T>> = self
            .inverse_system_basis(d)
            .into_iter()
            .map(|p| p.coeffs().to_vec())
            .collect();
        let matrix = Matrix::from_rows(monomial_count(dim, d), rows).row_basis();
        GradedSubspace::new(dim, d, matrix)
    }

    /// Hilbert function of the inverse system: dimension of each graded
    /// piece for degrees `0 ..= n + k`.
    pub fn hilbert_function(&self) -> HilbertFunction {
        let Some(max) = self.max_degree() else {
            return HilbertFunction { dims: vec![] };
        };
        let dim = self.arrangement.dim();
        let dims = (0..=max)
            .map(|d| monomial_count(dim, d) - self.degree_span(d).dim())
            .collect();
        HilbertFunction { dims }
    }
}

fn build_generators<T: Scalar>(
    arrangement: &Arrangement<T>,
    k: i64,
    variant: Variant,
) -> Result<GeneratorFamily<T>, Error> {
    let n = arrangement.n() as i64;
    let mut items = Vec::new();
    for stratum in arrangement.strata() {
        if variant == Variant::Lines && stratum.dim() != 1 {
            continue;
        }
        let exponent_i = n - stratum.m() as i64 + k + 1;
        assert!(
            exponent_i >= 0,
            "admissible k keeps every exponent nonnegative"
        );
        let exponent = exponent_i as usize;
        let polys = match variant {
            Variant::Lines => vec![expand_power(stratum.direction(), exponent)?],
            Variant::Full => {
                let s = stratum.dim();
                let combos = MonomialBasis::new(s, exponent);
                let mut polys = Vec::with_capacity(combos.len());
                for combo in combos.iter() {
                    let mut poly = GradedPoly::one(arrangement.dim());
                    for (j, &e) in combo.iter().enumerate() {
                        if e > 0 {
                            let factor = expand_power(stratum.basis().row(j), e as usize)?;
                            poly = poly.mul(&factor);
                        }
                    }
                    polys.push(poly);
                }
                polys
            }
        };
        items.push(StratumGenerators {
            stratum,
            exponent,
            polys,
        });
    }
    Ok(GeneratorFamily { items })
}

/// Per-degree span of the arrangement monomials that lie inside the inverse
/// system, and whether they span it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AMonomialSpan {
    /// Dimension, per degree, of the span of arrangement monomials lying in
    /// the inverse system.
    pub dims: Vec<usize>,
    /// True when those spans exhaust the inverse system in every degree.
    pub spanned: bool,
}

/// Enumerates all degree-`d` products of defining forms for every degree up
/// to `n + k`, keeps those lying in the inverse system, and reports the
/// dimensions of their spans.
pub fn a_monomial_span<T: Scalar>(spec: &IdealSpec<T>) -> AMonomialSpan {
    let arrangement = spec.arrangement();
    let dim = arrangement.dim();
    let hilbert = spec.hilbert_function();
    let Some(max) = spec.max_degree() else {
        return AMonomialSpan {
            dims: vec![],
            spanned: true,
        };
    };
    let linear_forms: Vec<GradedPoly<T, SolutionSpace>> = arrangement
        .forms()
        .iter()
        .map(|l| expand_power(l, 1).expect("defining forms are nonzero"))
        .collect();
    let mut dims = Vec::with_capacity(max + 1);
    for d in 0..=max {
        let system = spec.inverse_system_subspace(d);
        let mut span = SpanBuilder::new(monomial_count(dim, d));
        for combo in (0..arrangement.n()).combinations_with_replacement(d) {
            let mut product = GradedPoly::<T, SolutionSpace>::one(dim);
            for i in combo {
                product = product.mul(&linear_forms[i]);
            }
            if system.contains(&product) {
                span.push(product.coeffs().to_vec());
            }
        }
        dims.push(span.rank());
    }
    let spanned = dims.iter().copied().eq(hilbert.dims.iter().copied());
    AMonomialSpan { dims, spanned }
}

/// True iff the full and lines variants produce identical graded ideal
/// spans in every degree up to `n + k`.
pub fn c_equals_cprime<T: Scalar>(arrangement: &Arrangement<T>, k: i64) -> Result<bool, Error> {
    let full = IdealSpec::new(arrangement.clone(), k, Variant::Full)?;
    let lines = IdealSpec::new(arrangement.clone(), k, Variant::Lines)?;
    let Some(max) = full.max_degree() else {
        return Ok(true);
    };
    for d in 0..=max {
        if full.degree_span(d) != lines.degree_span(d) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The two independent computations of the degree-1 piece of the inverse
/// system at `k = -rho`: the orthogonal complement of the span of large
/// vectors, and the kernel of the degree-1 ideal span.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DegreeOneComponent<T: Scalar> {
    pub large_perp: GradedSubspace<T, SolutionSpace>,
    pub inverse_system: GradedSubspace<T, SolutionSpace>,
}

impl<T: Scalar> DegreeOneComponent<T> {
    pub fn consistent(&self) -> bool {
        self.large_perp == self.inverse_system
    }

    pub fn dim(&self) -> usize {
        self.inverse_system.dim()
    }
}

/// Computes the degree-1 inverse system at `k = -rho` both as the
/// perpendicular of the large-vector span and through the ideal kernel.
pub fn degree_one_component<T: Scalar>(
    arrangement: &Arrangement<T>,
) -> Result<DegreeOneComponent<T>, Error> {
    let dim = arrangement.dim();
    let rho = arrangement.rho_min() as i64;
    let spec = IdealSpec::new(arrangement.clone(), -rho, Variant::Full)?;
    let large = arrangement.large_span();
    let perp = Matrix::from_rows(dim, large.kernel_basis()).row_basis();
    Ok(DegreeOneComponent {
        large_perp: GradedSubspace::new(dim, 1, perp),
        inverse_system: spec.inverse_system_subspace(1),
    })
}

/// Per-degree dimension defect of the deletion-contraction sequence:
/// `defect[d] = dim C(A)_d - dim C(A \ H)_(d-1) - dim C(A / H)_d`.
///
/// All zeros is exactly the bookkeeping an exact sequence would force. The
/// chosen hyperplane must be neither a loop nor a coloop, and `k` must be
/// admissible for all three arrangements.
pub fn exact_sequence_defect<T: Scalar>(
    arrangement: &Arrangement<T>,
    label: usize,
    k: i64,
) -> Result<Vec<i64>, Error> {
    if label >= arrangement.n() {
        return Err(Error::InvalidLabel {
            label,
            n: arrangement.n(),
        });
    }
    let oracle = MatroidOracle::from_arrangement(arrangement)?;
    if oracle.is_loop(label) || oracle.is_coloop(label) {
        return Err(Error::LoopOrColoop { label });
    }
    let deleted = arrangement.delete(label)?;
    let (contracted, _) = arrangement.contract(label)?;
    if contracted.dim() == 0 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: 0,
        });
    }
    let spec_a = IdealSpec::new(arrangement.clone(), k, Variant::Full)?;
    let spec_del = IdealSpec::new(deleted, k, Variant::Full)?;
    let spec_con = IdealSpec::new(contracted, k, Variant::Full)?;
    let h_a = spec_a.hilbert_function();
    let h_del = spec_del.hilbert_function();
    let h_con = spec_con.hilbert_function();
    let top = [
        h_a.dims.len() as i64 - 1,
        h_del.dims.len() as i64, // shifted up by one
        h_con.dims.len() as i64 - 1,
    ]
    .into_iter()
    .max()
    .unwrap();
    if top < 0 {
        return Ok(vec![]);
    }
    let mut defect = Vec::with_capacity(top as usize + 1);
    for d in 0..=top as usize {
        let del_term = if d == 0 { 0 } else { h_del.get(d - 1) as i64 };
        defect.push(h_a.get(d) as i64 - del_term - h_con.get(d) as i64);
    }
    Ok(defect)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::apply_diff;
    use crate::Q;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn qs(ns: &[i64]) -> Vec<Q> {
        ns.iter().map(|&n| q(n)).collect()
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

    fn u23() -> Arrangement<Q> {
        Arrangement::new(2, vec![qs(&[1, 0]), qs(&[0, 1]), qs(&[1, 1])]).unwrap()
    }

    #[test]
    fn k_bound_enforced() {
        let a = six_form_rank4();
        assert!(IdealSpec::new(a.clone(), -3, Variant::Full).is_ok());
        assert!(matches!(
            IdealSpec::new(a, -4, Variant::Full),
            Err(Error::KBelowBound { k: -4, bound: -3 })
        ));
    }

    #[test]
    fn lines_generators_of_six_form_arrangement() {
        let spec = IdealSpec::new(six_form_rank4(), -2, Variant::Lines).unwrap();
        let gens = spec.generators();
        assert_eq!(gens.items().len(), 11);
        let mut degree_one = 0;
        let mut degree_two = 0;
        for item in gens.items() {
            match item.exponent {
                1 => degree_one += 1,
                2 => degree_two += 1,
                other => panic!("unexpected exponent {other}"),
            }
        }
        // three coordinate lines with rho = 2, eight epsilon lines with rho = 3
        assert_eq!(degree_one, 3);
        assert_eq!(degree_two, 8);
    }

    #[test]
    fn full_generators_include_high_degree_families() {
        let spec = IdealSpec::new(six_form_rank4(), -2, Variant::Full).unwrap();
        let whole_space = spec
            .generators()
            .items()
            .iter()
            .find(|f| f.stratum.dim() == 4)
            .expect("ambient stratum present");
        // exponent n - 0 + k + 1 = 5, all monomials of degree 5 in 4 variables
        assert_eq!(whole_space.exponent, 5);
        assert_eq!(whole_space.polys.len(), monomial_count(4, 5));
    }

    #[test]
    fn empty_arrangement_unit_ideal() {
        let empty = Arrangement::<Q>::new(3, vec![]).unwrap();
        let spec = IdealSpec::new(empty, -1, Variant::Full).unwrap();
        assert!(spec.generators().contains_unit());
        assert_eq!(spec.degree_span(0).dim(), 1);
        assert!(spec.max_degree().is_none());
        assert_eq!(spec.hilbert_function().dims, Vec::<usize>::new());
    }

    #[test]
    fn six_form_internal_spans() {
        for variant in [Variant::Full, Variant::Lines] {
            let spec = IdealSpec::new(six_form_rank4(), -2, variant).unwrap();
            let d1 = spec.degree_span(1);
            assert_eq!(d1.dim(), 3);
            assert_eq!(
                d1.basis().row_vecs(),
                vec![qs(&[1, 0, 0, 0]), qs(&[0, 1, 0, 0]), qs(&[0, 0, 1, 0])]
            );
            let d2 = spec.degree_span(2);
            assert_eq!(d2.dim(), 10);
        }
    }

    #[test]
    fn six_form_internal_inverse_system() {
        let spec = IdealSpec::new(six_form_rank4(), -2, Variant::Full).unwrap();
        let d0 = spec.inverse_system_basis(0);
        assert_eq!(d0.len(), 1);
        assert_eq!(d0[0].coeffs(), &[q(1)][..]);
        let d1 = spec.inverse_system_basis(1);
        assert_eq!(d1.len(), 1);
        assert_eq!(d1[0].coeffs(), &qs(&[0, 0, 0, 1])[..]);
        assert_eq!(d1[0].to_string(), "y4");
        assert!(spec.inverse_system_basis(2).is_empty());
        // degrees run to n + k = 4; everything above degree 1 vanishes
        assert_eq!(spec.hilbert_function().dims, vec![1, 1, 0, 0, 0]);
    }

    #[test]
    fn hilbert_totals_match_tutte_counts() {
        // spanning structure counts through the two shifted systems
        let internal = IdealSpec::new(six_form_rank4(), -1, Variant::Full).unwrap();
        assert_eq!(internal.hilbert_function().total(), 12);
        let external = IdealSpec::new(u23(), 0, Variant::Full).unwrap();
        assert_eq!(external.hilbert_function().total(), 7);
    }

    #[test]
    fn inverse_system_solves_the_differential_equations() {
        let spec = IdealSpec::new(u23(), 0, Variant::Full).unwrap();
        for d in 0..=spec.max_degree().unwrap() {
            for f in spec.inverse_system_basis(d) {
                for g in spec.generators().all_polys() {
                    if g.degree() > d {
                        continue;
                    }
                    let applied = apply_diff(g, &f).unwrap();
                    assert!(applied.is_zero(), "generator must annihilate {f}");
                }
            }
        }
    }

    #[test]
    fn a_monomials_miss_the_internal_system() {
        let spec = IdealSpec::new(six_form_rank4(), -2, Variant::Full).unwrap();
        let span = a_monomial_span(&spec);
        // the inverse system has dims (1, 1, 0, 0, 0) but no product of
        // forms reaches its degree-1 piece
        assert_eq!(span.dims, vec![1, 0, 0, 0, 0]);
        assert!(!span.spanned);
    }

    #[test]
    fn a_monomials_span_the_external_system() {
        let spec = IdealSpec::new(u23(), 0, Variant::Full).unwrap();
        let span = a_monomial_span(&spec);
        assert!(span.spanned);
        assert_eq!(span.dims, spec.hilbert_function().dims);
    }

    #[test]
    fn variants_agree_in_the_lemma_range() {
        assert!(c_equals_cprime(&six_form_rank4(), -2).unwrap());
        for k in [-3, -2, -1, 0] {
            assert!(c_equals_cprime(&u23(), k).unwrap(), "k = {k}");
        }
        assert!(matches!(
            c_equals_cprime(&u23(), -4),
            Err(Error::KBelowBound { .. })
        ));
    }

    #[test]
    fn degree_one_component_of_six_form_arrangement() {
        let c = degree_one_component(&six_form_rank4()).unwrap();
        assert!(c.consistent());
        assert_eq!(c.dim(), 1);
        assert_eq!(c.inverse_system.basis().row_vecs(), vec![qs(&[0, 0, 0, 1])]);
    }

    #[test]
    fn defect_vanishes_in_the_friendly_range() {
        let a = u23();
        for k in [0, -1] {
            for label in 0..3 {
                let defect = exact_sequence_defect(&a, label, k).unwrap();
                assert!(
                    defect.iter().all(|&d| d == 0),
                    "k={k} label={label} {defect:?}"
                );
            }
        }
    }

    #[test]
    fn defect_rejects_coloops() {
        let coloops = Arrangement::new(2, vec![qs(&[1, 0]), qs(&[0, 1])]).unwrap();
        assert!(matches!(
            exact_sequence_defect(&coloops, 0, 0),
            Err(Error::LoopOrColoop { label: 0 })
        ));
    }

    #[test]
    fn duality_and_vanishing() {
        let cases: Vec<(Arrangement<Q>, i64)> = vec![
            (six_form_rank4(), -2),
            (six_form_rank4(), -1),
            (u23(), 0),
            (u23(), -3),
        ];
        for (a, k) in cases {
            let dim = a.dim();
            let n = a.n();
            let spec = IdealSpec::new(a, k, Variant::Full).unwrap();
            let top = (n as i64 + k + 1).max(0) as usize;
            for d in 0..=top {
                let span_dim = spec.degree_span(d).dim();
                let system_dim = spec.inverse_system_basis(d).len();
                assert_eq!(span_dim + system_dim, monomial_count(dim, d));
            }
            assert_eq!(spec.inverse_system_basis(top).len(), 0);
        }
    }
}
