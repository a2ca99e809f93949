//! The intermediate invariant `F` and checkers for the coefficient
//! identities relating a link to its sublinks.
//!
//! Every nonempty sublink is evaluated once and cached by component
//! bitmask; decomposition sums are then products over cached values.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::combinatorics::{weak_compositions, SurjectionWalker};
use crate::laurent::{rat, BivarLaurent, Rational, UnivarLaurentT};
use crate::link::{ComponentSubset, CrossingId, LinkDiagram, LinkError, Sign};
use crate::report::{ReportContext, VerificationReport};
use crate::skein::{CoeffTable, SkeinEngine, SkeinError};

/// Largest component count accepted for sublink tables.
pub const MAX_COMPONENTS: usize = 16;

#[derive(Debug, Error)]
pub enum LmError {
    #[error("g = {g} is outside 0..={max}")]
    GOutOfRange { g: u32, max: i64 },
    #[error("needs at least {needed} components, diagram has {found}")]
    TooFewComponents { needed: usize, found: usize },
    #[error("diagram has {0} components, more than the supported {MAX_COMPONENTS}")]
    TooManyComponents(usize),
    #[error("crossing {0} joins a component to itself")]
    NotInterComponent(CrossingId),
    #[error("split union needs at least two pieces, got {0}")]
    TooFewPieces(usize),
    #[error("piece {0} of the split union has no components")]
    EmptyPiece(usize),
    #[error(transparent)]
    Skein(#[from] SkeinError),
    #[error(transparent)]
    Link(#[from] LinkError),
}

impl LmError {
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, LmError::Skein(SkeinError::ResourceLimit { .. }))
    }
}

/// Ȟ values and coefficient tables of every nonempty sublink.
#[derive(Debug, Clone)]
pub struct SublinkTable {
    components: usize,
    framed: Vec<BivarLaurent>,
    tables: Vec<Option<CoeffTable>>,
}

impl SublinkTable {
    pub fn compute(engine: &mut SkeinEngine, d: &LinkDiagram) -> Result<Self, LmError> {
        let count = d.component_count();
        if count > MAX_COMPONENTS {
            return Err(LmError::TooManyComponents(count));
        }
        let mut framed = vec![BivarLaurent::one()];
        let mut tables = vec![None];
        for mask in 1u64..1 << count {
            let sub = d.sublink(&ComponentSubset::from_mask(mask, count)?)?;
            let value = engine.check_homfly(&sub)?;
            tables.push(Some(CoeffTable::from_framed(&sub, &value)?));
            framed.push(value);
        }
        Ok(Self {
            components: count,
            framed,
            tables,
        })
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn full_mask(&self) -> u64 {
        (1u64 << self.components) - 1
    }

    /// Ȟ of the sublink on `mask`; the empty mask gives 1.
    pub fn framed(&self, mask: u64) -> &BivarLaurent {
        &self.framed[mask as usize]
    }

    pub fn table(&self, mask: u64) -> &CoeffTable {
        self.tables[mask as usize]
            .as_ref()
            .expect("coefficient table of the empty sublink")
    }

    pub fn h(&self, mask: u64, g: u32) -> UnivarLaurentT {
        self.table(mask).h(g)
    }

    pub fn p(&self, mask: u64, g: u32) -> UnivarLaurentT {
        self.table(mask).p(g)
    }
}

/// Calls `visit` with the block masks of every ordered decomposition of
/// the components into `blocks` nonempty parts.
fn for_each_decomposition(components: usize, blocks: usize, mut visit: impl FnMut(&[u64])) {
    let mut walker = SurjectionWalker::new(components, blocks);
    let mut masks = vec![0u64; blocks];
    while let Some(assign) = walker.advance() {
        masks.iter_mut().for_each(|m| *m = 0);
        for (component, &b) in assign.iter().enumerate() {
            masks[b] |= 1 << component;
        }
        visit(&masks);
    }
}

fn alternating_weight(blocks: usize) -> Rational {
    let sign = if blocks % 2 == 1 { 1 } else { -1 };
    rat(sign) / rat(blocks as i64)
}

/// `F` of a link with `L` components. Its poly has z-exponents `≥ -L` of
/// the same parity as `L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FValue {
    pub components: usize,
    pub poly: BivarLaurent,
}

impl FValue {
    /// `z^L F`, a polynomial in `z^2`.
    pub fn hat(&self) -> BivarLaurent {
        self.poly.mul_monomial(self.components as i32, 0)
    }

    /// Coefficient of `z^{2g}` in `z^L F`.
    pub fn coefficient(&self, g: u32) -> UnivarLaurentT {
        self.hat().coeff_of_z(2 * g as i32)
    }
}

/// `F` assembled from cached sublink values.
pub fn intermediate_f_from(table: &SublinkTable) -> FValue {
    let count = table.components();
    let mut hat = BivarLaurent::zero();
    for blocks in 1..=count {
        let mut sum = BivarLaurent::zero();
        for_each_decomposition(count, blocks, |masks| {
            let product: BivarLaurent = masks.iter().map(|&m| table.framed(m).clone()).product();
            sum += product;
        });
        hat += sum.scale(&alternating_weight(blocks));
    }
    FValue {
        components: count,
        poly: hat.mul_monomial(-(count as i32), 0),
    }
}

pub fn intermediate_f(engine: &mut SkeinEngine, d: &LinkDiagram) -> Result<FValue, LmError> {
    if d.component_count() == 0 {
        return Err(LmError::TooFewComponents {
            needed: 1,
            found: 0,
        });
    }
    Ok(intermediate_f_from(&SublinkTable::compute(engine, d)?))
}

/// Nonzero coefficients of `z^L F`, keyed by `g`.
pub fn f_coefficients(
    engine: &mut SkeinEngine,
    d: &LinkDiagram,
) -> Result<BTreeMap<u32, UnivarLaurentT>, LmError> {
    let hat = intermediate_f(engine, d)?.hat();
    Ok(hat
        .z_exponents()
        .into_iter()
        .map(|e| ((e / 2) as u32, hat.coeff_of_z(e)))
        .collect())
}

fn link_context(d: &LinkDiagram) -> Result<ReportContext, LmError> {
    Ok(ReportContext {
        components: Some(d.component_count()),
        writhe: Some(d.writhe()),
        total_lk: Some(d.total_linking()?),
        ..Default::default()
    })
}

fn require_components(d: &LinkDiagram, needed: usize) -> Result<(), LmError> {
    let found = d.component_count();
    if found < needed {
        return Err(LmError::TooFewComponents { needed, found });
    }
    Ok(())
}

/// `z^L F` has no terms below `z^{2(L-1)}`.
pub fn verify_low_degree_vanishing(
    engine: &mut SkeinEngine,
    d: &LinkDiagram,
) -> Result<VerificationReport, LmError> {
    require_components(d, 2)?;
    let count = d.component_count() as i32;
    let hat = intermediate_f(engine, d)?.hat();
    let low = hat.filter_z(|e| e < 2 * (count - 1));
    Ok(VerificationReport::new(
        "low-degree-vanishing",
        link_context(d)?,
        low,
        BivarLaurent::zero(),
    ))
}

/// `h_g` of the link against the sum over ordered decompositions into at
/// least two blocks and weak compositions of `g`, for `0 ≤ g ≤ L-2`.
pub fn verify_coefficient_recursion(
    engine: &mut SkeinEngine,
    d: &LinkDiagram,
    g: u32,
) -> Result<VerificationReport, LmError> {
    require_components(d, 2)?;
    let count = d.component_count();
    if g as usize > count - 2 {
        return Err(LmError::GOutOfRange {
            g,
            max: count as i64 - 2,
        });
    }
    let table = SublinkTable::compute(engine, d)?;
    let lhs = table.h(table.full_mask(), g);
    let mut rhs = UnivarLaurentT::zero();
    for blocks in 2..=count {
        let splits = weak_compositions(g, blocks);
        let mut sum = UnivarLaurentT::zero();
        for_each_decomposition(count, blocks, |masks| {
            for split in &splits {
                let product: UnivarLaurentT = masks
                    .iter()
                    .zip(split)
                    .map(|(&m, &gs)| table.h(m, gs))
                    .product();
                sum += product;
            }
        });
        rhs += sum.scale(&-alternating_weight(blocks));
    }
    let mut context = link_context(d)?;
    context.g = Some(g);
    Ok(VerificationReport::univariate(
        "coefficient-recursion",
        context,
        &lhs,
        &rhs,
    ))
}

fn with_route(mut context: ReportContext, route: &str) -> ReportContext {
    context.route = Some(route.to_string());
    context
}

fn product_over<F>(count: usize, skip: u64, f: F) -> UnivarLaurentT
where
    F: Fn(u64) -> UnivarLaurentT,
{
    (0..count)
        .map(|a| 1u64 << a)
        .filter(|bit| skip & bit == 0)
        .map(f)
        .product()
}

/// Lowest coefficient of a link against its components', as an h-form
/// report and a p-form report.
pub fn verify_first_coefficient(
    engine: &mut SkeinEngine,
    d: &LinkDiagram,
) -> Result<Vec<VerificationReport>, LmError> {
    require_components(d, 1)?;
    let count = d.component_count();
    let table = SublinkTable::compute(engine, d)?;
    let full = table.full_mask();
    let context = link_context(d)?;
    let lk = d.total_linking()?;

    let h_lhs = table.h(full, 0);
    let h_rhs = product_over(count, 0, |m| table.h(m, 0));

    let p_lhs = table.p(full, 0);
    let p_rhs = UnivarLaurentT::t_minus_t_inv()
        .pow(count as u32 - 1)
        .mul_t_power(-2 * lk as i32)
        * product_over(count, 0, |m| table.p(m, 0));

    Ok(vec![
        VerificationReport::univariate(
            "first-coefficient/h-form",
            with_route(context.clone(), "h"),
            &h_lhs,
            &h_rhs,
        ),
        VerificationReport::univariate(
            "first-coefficient/p-form",
            with_route(context, "p"),
            &p_lhs,
            &p_rhs,
        ),
    ])
}

/// Second coefficient of a link against its two-component sublinks and
/// components, as an h-form report and a p-form report.
pub fn verify_second_coefficient(
    engine: &mut SkeinEngine,
    d: &LinkDiagram,
) -> Result<Vec<VerificationReport>, LmError> {
    require_components(d, 2)?;
    let count = d.component_count();
    let table = SublinkTable::compute(engine, d)?;
    let full = table.full_mask();
    let context = link_context(d)?;
    let lk = d.total_linking()?;
    let excess = rat(count as i64 - 2);
    let delta = UnivarLaurentT::t_minus_t_inv();

    let mut h_pairs = UnivarLaurentT::zero();
    let mut p_pairs = UnivarLaurentT::zero();
    for b in 0..count {
        for c in b + 1..count {
            let pair = (1u64 << b) | (1u64 << c);
            let pair_lk = d.linking_number(b, c)?;
            h_pairs += table.h(pair, 1) * product_over(count, pair, |m| table.h(m, 0));
            p_pairs += table.p(pair, 1).mul_t_power(2 * pair_lk as i32)
                * product_over(count, pair, |m| table.p(m, 0));
        }
    }
    let mut h_singles = UnivarLaurentT::zero();
    let mut p_singles = UnivarLaurentT::zero();
    for b in 0..count {
        let bit = 1u64 << b;
        h_singles += table.h(bit, 1) * product_over(count, bit, |m| table.h(m, 0));
        p_singles += table.p(bit, 1) * product_over(count, bit, |m| table.p(m, 0));
    }

    let h_lhs = table.h(full, 1);
    let h_rhs = h_pairs - h_singles.scale(&excess);

    let p_lhs = table.p(full, 1);
    let p_rhs = (delta.pow(count as u32 - 2) * p_pairs
        - delta.pow(count as u32 - 1) * p_singles.scale(&excess))
    .mul_t_power(-2 * lk as i32);

    Ok(vec![
        VerificationReport::univariate(
            "second-coefficient/h-form",
            with_route(context.clone(), "h"),
            &h_lhs,
            &h_rhs,
        ),
        VerificationReport::univariate(
            "second-coefficient/p-form",
            with_route(context, "p"),
            &p_lhs,
            &p_rhs,
        ),
    ])
}

/// `F(L+) - F(L-) = z F(L0)` at a crossing between two components.
pub fn verify_f_skein(
    engine: &mut SkeinEngine,
    d: &LinkDiagram,
    crossing: CrossingId,
) -> Result<VerificationReport, LmError> {
    let info = d.crossing(crossing)?;
    if info.is_self_crossing() {
        return Err(LmError::NotInterComponent(crossing));
    }
    let switched = d.switch_crossing(crossing)?;
    let (plus, minus) = match info.sign {
        Sign::Positive => (d.clone(), switched),
        Sign::Negative => (switched, d.clone()),
    };
    let smoothed = d.smooth_crossing(crossing)?;
    let lhs = intermediate_f(engine, &plus)?.poly - intermediate_f(engine, &minus)?.poly;
    let rhs = intermediate_f(engine, &smoothed)?.poly.mul_monomial(1, 0);
    let mut context = link_context(d)?;
    context.crossing = Some(crossing);
    Ok(VerificationReport::new("f-skein", context, lhs, rhs))
}

/// `F` of a split union of at least two nonempty diagrams is zero.
pub fn verify_split_f(
    engine: &mut SkeinEngine,
    pieces: &[LinkDiagram],
) -> Result<VerificationReport, LmError> {
    if pieces.len() < 2 {
        return Err(LmError::TooFewPieces(pieces.len()));
    }
    if let Some(i) = pieces.iter().position(|p| p.component_count() == 0) {
        return Err(LmError::EmptyPiece(i));
    }
    let union = pieces[1..]
        .iter()
        .fold(pieces[0].clone(), |acc, p| acc.disjoint_union(p));
    let value = intermediate_f(engine, &union)?;
    Ok(VerificationReport::new(
        "split-f",
        link_context(&union)?,
        value.poly,
        BivarLaurent::zero(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::BraidWord;

    fn close(s: &str) -> LinkDiagram {
        BraidWord::parse(s).unwrap().close()
    }

    fn u(terms: &[(i32, i64)]) -> UnivarLaurentT {
        UnivarLaurentT::from_int_terms(terms)
    }

    const HOPF: &str = "strands=2; 1 1";
    const TREFOIL: &str = "strands=2; 1 1 1";
    const BORROMEAN: &str = "strands=3; 1 -2 1 -2 1 -2";
    const T24: &str = "strands=2; 1 1 1 1";
    const TREFOIL_HOPF: &str = "strands=4; 1 1 1 3 3";

    #[test]
    fn knot_f_is_h() {
        let mut e = SkeinEngine::new();
        let k = close(TREFOIL);
        let f = intermediate_f(&mut e, &k).unwrap();
        let framed = e.check_homfly(&k).unwrap();
        assert_eq!(f.poly, framed.mul_monomial(-1, 0));
    }

    #[test]
    fn split_unknots_f_vanish() {
        let mut e = SkeinEngine::new();
        assert!(intermediate_f(&mut e, &LinkDiagram::unlink(2))
            .unwrap()
            .poly
            .is_zero());
        assert!(intermediate_f(&mut e, &LinkDiagram::unlink(4))
            .unwrap()
            .poly
            .is_zero());
    }

    #[test]
    fn hopf_f_value() {
        let mut e = SkeinEngine::new();
        let hopf = close(HOPF);
        let f = intermediate_f(&mut e, &hopf).unwrap();
        let h_hopf = e.check_homfly(&hopf).unwrap().mul_monomial(-2, 0);
        let h_unknot = BivarLaurent::t_minus_t_inv().mul_monomial(-1, 0);
        assert_eq!(f.poly, h_hopf - h_unknot.pow(2));
        assert_eq!(f.poly.min_z_degree(), Some(0));
    }

    #[test]
    fn f_coefficient_examples() {
        let mut e = SkeinEngine::new();
        let hopf = f_coefficients(&mut e, &close(HOPF)).unwrap();
        assert!(!hopf.contains_key(&0));
        let knot = close(TREFOIL);
        let f = f_coefficients(&mut e, &knot).unwrap();
        let table = e.coeff_table(&knot).unwrap();
        assert_eq!(f.len(), 2);
        for (g, v) in f {
            assert_eq!(v, table.h(g));
        }
        let bor = intermediate_f(&mut e, &close(BORROMEAN)).unwrap();
        assert!(bor.coefficient(0).is_zero());
        assert!(bor.coefficient(1).is_zero());
    }

    #[test]
    fn vanishing_examples() {
        let mut e = SkeinEngine::new();
        for s in [HOPF, BORROMEAN, T24] {
            assert!(
                verify_low_degree_vanishing(&mut e, &close(s)).unwrap().pass,
                "{s}"
            );
        }
        assert!(matches!(
            verify_low_degree_vanishing(&mut e, &close(TREFOIL)),
            Err(LmError::TooFewComponents { .. })
        ));
    }

    #[test]
    fn recursion_examples() {
        let mut e = SkeinEngine::new();
        let r = verify_coefficient_recursion(&mut e, &close(HOPF), 0).unwrap();
        assert!(r.pass);
        assert_eq!(r.lhs, BivarLaurent::t_minus_t_inv().pow(2));
        let bor = close(BORROMEAN);
        for g in 0..=1 {
            assert!(verify_coefficient_recursion(&mut e, &bor, g).unwrap().pass);
        }
        assert!(matches!(
            verify_coefficient_recursion(&mut e, &bor, 2),
            Err(LmError::GOutOfRange { g: 2, max: 1 })
        ));
        let four = close("strands=4; 1 1 2 2 3 3 -1 -1 2 -3 -3 2");
        assert_eq!(four.component_count(), 4);
        assert!(verify_coefficient_recursion(&mut e, &four, 2).unwrap().pass);
    }

    #[test]
    fn first_coefficient_examples() {
        let mut e = SkeinEngine::new();
        for s in [TREFOIL, HOPF, BORROMEAN, TREFOIL_HOPF] {
            let reports = verify_first_coefficient(&mut e, &close(s)).unwrap();
            assert!(reports.iter().all(|r| r.pass), "{s}");
        }
        let hopf = verify_first_coefficient(&mut e, &close(HOPF)).unwrap();
        assert_eq!(hopf[1].lhs, u(&[(-1, 1), (-3, -1)]).lift(0));
        let bor = verify_first_coefficient(&mut e, &close(BORROMEAN)).unwrap();
        assert_eq!(bor[1].lhs, UnivarLaurentT::t_minus_t_inv().pow(2).lift(0));
    }

    #[test]
    fn second_coefficient_examples() {
        let mut e = SkeinEngine::new();
        for s in [HOPF, "strands=2; -1 -1", T24, BORROMEAN, TREFOIL_HOPF] {
            let reports = verify_second_coefficient(&mut e, &close(s)).unwrap();
            assert!(reports.iter().all(|r| r.pass), "{s}: {reports:?}");
        }
    }

    #[test]
    fn f_skein_examples() {
        let mut e = SkeinEngine::new();
        for s in [HOPF, T24, BORROMEAN] {
            let d = close(s);
            let ids: Vec<_> = d
                .crossings()
                .filter(|c| !c.is_self_crossing())
                .map(|c| c.id)
                .collect();
            assert!(!ids.is_empty());
            for id in ids {
                assert!(verify_f_skein(&mut e, &d, id).unwrap().pass, "{s} at {id}");
            }
        }
        let trefoil = close(TREFOIL);
        assert!(matches!(
            verify_f_skein(&mut e, &trefoil, 0),
            Err(LmError::NotInterComponent(0))
        ));
    }

    #[test]
    fn split_examples() {
        let mut e = SkeinEngine::new();
        let unknot = LinkDiagram::unlink(1);
        let trefoil = close(TREFOIL);
        assert!(
            verify_split_f(&mut e, &[unknot.clone(), unknot.clone()])
                .unwrap()
                .pass
        );
        assert!(
            verify_split_f(&mut e, &[trefoil.clone(), trefoil, unknot.clone()])
                .unwrap()
                .pass
        );
        assert!(
            verify_split_f(&mut e, &vec![unknot.clone(); 4])
                .unwrap()
                .pass
        );
        assert!(matches!(
            verify_split_f(&mut e, std::slice::from_ref(&unknot)),
            Err(LmError::TooFewPieces(1))
        ));
        assert!(matches!(
            verify_split_f(&mut e, &[unknot, LinkDiagram::empty()]),
            Err(LmError::EmptyPiece(1))
        ));
    }
}
