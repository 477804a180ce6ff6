//! Flux of twist words on invariant homology classes.
//!
//! The primary route integrates the shear isotopy track of each twist and
//! then closes the track's leftover boundary circles with an exact 2-chain:
//! a full crossing of a twisted cylinder drags the exit boundary circle
//! around `power` times, so the raw track is a cobordism only after those
//! circles are capped. The cap is supported on cylinder cores and half-
//! cylinder bands, and is normalized to the effective chain (minimum
//! multiplicity zero). The independent check route computes the winding
//! number function of image-minus-curve over the squares and integrates it.
//!
//! On a closed surface of unit area the period lattice is the integers, so
//! values are reported both raw and reduced to [0,1).

use crate::curves::{q_int, side_of, Polyline, Q};
use crate::error::{Error, Result};
use crate::homology::{
    class_of_parts, invariant_sublattice, twist_action, zmat_det, zmat_eq_identity, zmat_sub,
    zmat_identity, HomologyFrame, ZMat,
};
use crate::surface::{CurveRef, Family, SquareComplex, SquareId};
use crate::twists::{apply_word_detailed, TwistWord};
use num::{BigInt, Signed, Zero};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FluxValue {
    pub raw: Q,
    /// canonical representative modulo the period lattice, in [0,1)
    pub reduced: Q,
}

impl FluxValue {
    pub fn from_raw(raw: Q) -> Self {
        let reduced = &raw - raw.floor();
        FluxValue { raw, reduced }
    }
}

const MAX_RETRY: u32 = 5;

/// Flux of `w` along the class of `p`; defined only when the class is fixed
/// by the induced homology action.
pub fn flux(c: &SquareComplex, f: &HomologyFrame, p: &Polyline, w: &TwistWord) -> Result<FluxValue> {
    flux_parts(c, f, &[(p.clone(), 1)], w)
}

/// Flux along a weighted 1-cycle given by polyline parts.
pub fn flux_parts(
    c: &SquareComplex,
    f: &HomologyFrame,
    parts: &[(Polyline, i64)],
    w: &TwistWord,
) -> Result<FluxValue> {
    let borrowed: Vec<(&Polyline, i64)> = parts.iter().map(|(p, m)| (p, *m)).collect();
    let class = class_of_parts(c, f, &borrowed)?;
    let action = twist_action(f, w);
    if !fixes_class(&action, &class) {
        return Err(Error::ClassNotInvariant);
    }
    let mut sweep = Q::zero();
    let mut wraps: Vec<(CurveRef, i64)> = Vec::new();
    for (p, m) in parts {
        let (_, swept, part_wraps) = apply_word_detailed(c, p, w);
        sweep += swept * q_int(*m);
        for (curve, k) in part_wraps {
            match wraps.iter_mut().find(|(cr, _)| *cr == curve) {
                Some((_, acc)) => *acc += k * m,
                None => wraps.push((curve, k * m)),
            }
        }
    }
    wraps.retain(|(_, k)| *k != 0);
    let correction = boundary_correction(c, &wraps)?;
    let raw = sweep + correction / q_int(c.n_squares() as i64);
    Ok(FluxValue::from_raw(raw))
}

fn fixes_class(m: &ZMat, x: &[BigInt]) -> bool {
    let n = m.len();
    for i in 0..n {
        let mut acc = BigInt::zero();
        for j in 0..n {
            if !x[j].is_zero() {
                acc += &m[i][j] * &x[j];
            }
        }
        if acc != x[i] {
            return false;
        }
    }
    true
}

/// Area (in square units) of the chain whose boundary is the net exit
/// track of the shear isotopies: wraps[i] copies of the across=1 boundary
/// circle of each cylinder, oriented along the core. Each circle is the
/// core plus the boundary of the outer half band, with a sign that differs
/// between the families because (along, across) is positively oriented in
/// alpha charts and negatively in beta charts.
fn boundary_correction(c: &SquareComplex, wraps: &[(CurveRef, i64)]) -> Result<Q> {
    if wraps.is_empty() {
        return Ok(Q::zero());
    }
    let cap = core_cap_area(c, wraps)?;
    let mut band = Q::zero();
    for (curve, k) in wraps {
        let width = q_int(c.cylinder(*curve).width as i64);
        let half = width / q_int(2);
        match curve.family {
            Family::Alpha => band -= q_int(*k) * half,
            Family::Beta => band += q_int(*k) * half,
        }
    }
    Ok(cap + band)
}

/// Effective 2-chain bounding the weighted sum of cylinder cores, evaluated
/// as a winding function constant on square quadrants; returns its area in
/// square units. The input must be nullhomologous.
fn core_cap_area(c: &SquareComplex, weights: &[(CurveRef, i64)]) -> Result<Q> {
    let n = c.n_squares();
    let mut h = vec![0i64; n]; // horizontal strand weight, +x direction
    let mut mu = vec![0i64; n]; // vertical strand weight, +y frame direction
    for (curve, k) in weights {
        let cyl = c.cylinder(*curve);
        for &s in &cyl.squares {
            match curve.family {
                Family::Alpha => h[s] += k,
                Family::Beta => mu[s] += k * if c.flip(s) > 0 { 1 } else { -1 },
            }
        }
    }
    // quadrant offsets relative to the SW quadrant: crossing the vertical
    // strand eastward adds -mu, crossing the horizontal strand northward
    // adds +h
    #[derive(Clone, Copy, PartialEq, Eq)]
    enum Quad {
        SW,
        SE,
        NW,
        NE,
    }
    let offset = |s: SquareId, q: Quad| -> i64 {
        match q {
            Quad::SW => 0,
            Quad::SE => -mu[s],
            Quad::NW => h[s],
            Quad::NE => h[s] - mu[s],
        }
    };
    // the two quadrants flanking a side, at the low and high parameter ends
    let side_quads = |side: crate::surface::Side| -> (Quad, Quad) {
        match side {
            crate::surface::Side::North => (Quad::NW, Quad::NE),
            crate::surface::Side::South => (Quad::SW, Quad::SE),
            crate::surface::Side::East => (Quad::SE, Quad::NE),
            crate::surface::Side::West => (Quad::SW, Quad::NW),
        }
    };
    let mut base: Vec<Option<i64>> = vec![None; n];
    base[0] = Some(0);
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(0usize);
    while let Some(s) = queue.pop_front() {
        let cs = base[s].unwrap();
        for side in [
            crate::surface::Side::North,
            crate::surface::Side::South,
            crate::surface::Side::East,
            crate::surface::Side::West,
        ] {
            let (t, t_side, rev) = c.glued_side(s, side);
            let (lo, hi) = side_quads(side);
            let (tlo, thi) = side_quads(t_side);
            for (mine, theirs) in [(lo, if rev { thi } else { tlo }), (hi, if rev { tlo } else { thi })]
            {
                let value = cs + offset(s, mine);
                let t_base = value - offset(t, theirs);
                match base[t] {
                    None => {
                        base[t] = Some(t_base);
                        queue.push_back(t);
                    }
                    Some(existing) => {
                        if existing != t_base {
                            return Err(Error::Internal {
                                msg: "core cap propagation is inconsistent (cycle not nullhomologous)"
                                    .into(),
                            });
                        }
                    }
                }
            }
        }
    }
    let mut min = i64::MAX;
    let mut total: i64 = 0;
    for s in 0..n {
        let cs = base[s].ok_or(Error::Disconnected)?;
        for q in [Quad::SW, Quad::SE, Quad::NW, Quad::NE] {
            let v = cs + offset(s, q);
            min = min.min(v);
            total += v;
        }
    }
    let shifted = total - min * (4 * n as i64);
    Ok(Q::new(BigInt::from(shifted), BigInt::from(4)))
}

// ---- independent route: winding area of an explicit cycle ----

/// Winding-number area (in square units) of the weighted 1-cycle given by
/// the parts, normalized by the seed square only; well defined modulo the
/// total area. The cycle must be nullhomologous and in generic position
/// with respect to the square grid.
pub fn winding_area(c: &SquareComplex, parts: &[(&Polyline, i64)]) -> Result<Q> {
    let n = c.n_squares();
    struct SquareData {
        segs: Vec<(crate::curves::Pt, crate::curves::Pt, i64)>,
        jumps: [BTreeMap<Q, i64>; 4], // indexed by side: N, S, E, W
    }
    let side_index = |s: crate::surface::Side| -> usize {
        match s {
            crate::surface::Side::North => 0,
            crate::surface::Side::South => 1,
            crate::surface::Side::East => 2,
            crate::surface::Side::West => 3,
        }
    };
    let mut data: Vec<SquareData> = (0..n)
        .map(|_| SquareData {
            segs: Vec::new(),
            jumps: [BTreeMap::new(), BTreeMap::new(), BTreeMap::new(), BTreeMap::new()],
        })
        .collect();
    let one = q_int(1);
    for (p, m) in parts {
        if *m == 0 {
            continue;
        }
        for seg in &p.segs {
            let dx = &seg.b.x - &seg.a.x;
            let dy = &seg.b.y - &seg.a.y;
            // reject segments lying along grid lines and corner endpoints
            if (dx.is_zero() && (seg.a.x.is_zero() || seg.a.x == one))
                || (dy.is_zero() && (seg.a.y.is_zero() || seg.a.y == one))
            {
                return Err(Error::NotTransverse {
                    msg: "cycle segment lies along a square side".into(),
                });
            }
            for pt in [&seg.a, &seg.b] {
                let on_x = pt.x.is_zero() || pt.x == one;
                let on_y = pt.y.is_zero() || pt.y == one;
                if on_x && on_y {
                    return Err(Error::NotTransverse {
                        msg: "cycle passes through a square corner".into(),
                    });
                }
                if let Some(side) = side_of(pt) {
                    let delta = match side {
                        crate::surface::Side::East | crate::surface::Side::West => {
                            if dx.is_zero() {
                                return Err(Error::NotTransverse {
                                    msg: "cycle tangent to a vertical side".into(),
                                });
                            }
                            if dx.is_positive() {
                                *m
                            } else {
                                -*m
                            }
                        }
                        crate::surface::Side::North | crate::surface::Side::South => {
                            if dy.is_zero() {
                                return Err(Error::NotTransverse {
                                    msg: "cycle tangent to a horizontal side".into(),
                                });
                            }
                            if dy.is_positive() {
                                -*m
                            } else {
                                *m
                            }
                        }
                    };
                    let key = crate::curves::side_param(side, pt);
                    let slot = data[seg.square].jumps[side_index(side)]
                        .entry(key)
                        .or_insert(0);
                    *slot += delta;
                }
            }
            data[seg.square]
                .segs
                .push((seg.a.clone(), seg.b.clone(), *m));
        }
    }
    let sum_jumps = |m: &BTreeMap<Q, i64>| -> i64 { m.values().sum() };
    // corner values: c_sw is the winding just inside the SW corner; the
    // other corners follow from the side jump totals
    let mut c_sw: Vec<Option<i64>> = vec![None; n];
    c_sw[0] = Some(0);
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(0usize);
    // inward side function: (base at low end, jump list)
    let side_base = |s: usize, side: crate::surface::Side, csw: i64, d: &[SquareData]| -> i64 {
        match side {
            crate::surface::Side::West | crate::surface::Side::South => csw,
            crate::surface::Side::North => csw + sum_jumps(&d[s].jumps[3]),
            crate::surface::Side::East => csw + sum_jumps(&d[s].jumps[1]),
        }
    };
    while let Some(s) = queue.pop_front() {
        let csw = c_sw[s].unwrap();
        // per-square consistency of the four jump totals
        let jn = sum_jumps(&data[s].jumps[0]);
        let js = sum_jumps(&data[s].jumps[1]);
        let je = sum_jumps(&data[s].jumps[2]);
        let jw = sum_jumps(&data[s].jumps[3]);
        if jw + jn != js + je {
            return Err(Error::Internal {
                msg: format!("winding jumps around square {s} do not close"),
            });
        }
        for side in [
            crate::surface::Side::North,
            crate::surface::Side::South,
            crate::surface::Side::East,
            crate::surface::Side::West,
        ] {
            let fx_base = side_base(s, side, csw, &data);
            let fx_total = fx_base + sum_jumps(&data[s].jumps[side_index(side)]);
            let (t, t_side, rev) = c.glued_side(s, side);
            let partner_base = if rev { fx_total } else { fx_base };
            let t_csw = match t_side {
                crate::surface::Side::West | crate::surface::Side::South => partner_base,
                crate::surface::Side::North => partner_base - sum_jumps(&data[t].jumps[3]),
                crate::surface::Side::East => partner_base - sum_jumps(&data[t].jumps[1]),
            };
            match c_sw[t] {
                None => {
                    c_sw[t] = Some(t_csw);
                    queue.push_back(t);
                }
                Some(existing) => {
                    if existing != t_csw {
                        return Err(Error::NotNullhomologous);
                    }
                }
            }
        }
    }
    // integrate: per square, the west side function plus the strip to the
    // right of every height crossing
    let mut total = Q::zero();
    for s in 0..n {
        let csw = c_sw[s].ok_or(Error::Disconnected)?;
        total += q_int(csw);
        for (y, delta) in &data[s].jumps[3] {
            total += q_int(*delta) * (&one - y);
        }
        for (a, b, m) in &data[s].segs {
            let dy = &b.y - &a.y;
            if dy.is_zero() {
                continue;
            }
            let sign = if dy.is_positive() { -1i64 } else { 1i64 };
            let width = &one - (&a.x + &b.x) / q_int(2);
            let span = dy.abs();
            total += q_int(sign * m) * width * span;
        }
    }
    Ok(total)
}

/// Winding-number area of `q - p`, reduced modulo the period lattice.
/// Independent of the shear-track machinery.
pub fn winding_oracle(
    c: &SquareComplex,
    f: &HomologyFrame,
    p: &Polyline,
    q: &Polyline,
) -> Result<FluxValue> {
    let cp = class_of_parts(c, f, &[(p, 1)])?;
    let cq = class_of_parts(c, f, &[(q, 1)])?;
    if cp != cq {
        return Err(Error::NotNullhomologous);
    }
    let area = winding_area(c, &[(q, 1), (p, -1)])?;
    Ok(FluxValue::from_raw(area / q_int(c.n_squares() as i64)))
}

// ---- the flux homomorphism and realizability ----

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RealizabilityVerdict {
    /// nonzero flux: not the first return map of any Reeb flow
    Obstructed,
    /// 1 is not an eigenvalue of the action; on a surface with boundary the
    /// primitive could be corrected and the map realized
    EigenvalueOneAbsent,
    Inconclusive,
}

impl RealizabilityVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            RealizabilityVerdict::Obstructed => "obstructed",
            RealizabilityVerdict::EigenvalueOneAbsent => "eigenvalue-one-absent",
            RealizabilityVerdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Realizability {
    pub verdict: RealizabilityVerdict,
    pub notes: Vec<String>,
}

#[derive(Debug)]
pub struct FluxReport {
    pub word: TwistWord,
    pub action: ZMat,
    pub torelli: bool,
    /// saturated basis of the invariant sublattice, as coordinate vectors
    pub k_basis: Vec<Vec<BigInt>>,
    /// flux on each basis vector
    pub fluxes: Vec<FluxValue>,
    pub realizability: Realizability,
}

/// Evaluate the flux homomorphism on a basis of the invariant sublattice.
pub fn flux_hom(c: &SquareComplex, f: &HomologyFrame, w: &TwistWord) -> Result<FluxReport> {
    let action = twist_action(f, w);
    let torelli = zmat_eq_identity(&action);
    let k_basis = invariant_sublattice(&action);
    let mut fluxes = Vec::with_capacity(k_basis.len());
    for class in &k_basis {
        let value = flux_of_class(c, f, class, w)?;
        fluxes.push(value);
    }
    let realizability = realizability_from(&action, &fluxes);
    Ok(FluxReport {
        word: w.clone(),
        action,
        torelli,
        k_basis,
        fluxes,
        realizability,
    })
}

/// Flux on an arbitrary invariant class, realized as a weighted combination
/// of spanning cycles.
pub fn flux_of_class(
    c: &SquareComplex,
    f: &HomologyFrame,
    class: &[BigInt],
    w: &TwistWord,
) -> Result<FluxValue> {
    let mut last = Error::ClassNotInvariant;
    for retry in 0..MAX_RETRY {
        let parts = match realize_class(c, f, class, retry) {
            Ok(p) => p,
            Err(e @ Error::NotTransverse { .. }) => {
                last = e;
                continue;
            }
            Err(e) => return Err(e),
        };
        match flux_parts(c, f, &parts, w) {
            Ok(v) => return Ok(v),
            Err(e @ Error::NotTransverse { .. }) => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

/// Weighted spanning-cycle representative of a class vector.
pub fn realize_class(
    c: &SquareComplex,
    f: &HomologyFrame,
    class: &[BigInt],
    retry: u32,
) -> Result<Vec<(Polyline, i64)>> {
    realize_class_at(c, f, class, retry, false)
}

/// As `realize_class`, optionally using the parallel block of router slots
/// (a homologous representative with different side parameters).
pub fn realize_class_at(
    c: &SquareComplex,
    f: &HomologyFrame,
    class: &[BigInt],
    retry: u32,
    alt: bool,
) -> Result<Vec<(Polyline, i64)>> {
    use num::ToPrimitive;
    let m = f.cycles.len();
    let mut parts = Vec::new();
    for j in 0..m {
        let mut coeff = BigInt::zero();
        for (l, x) in class.iter().enumerate() {
            if !x.is_zero() {
                coeff += x * &f.transform[l][j];
            }
        }
        if coeff.is_zero() {
            continue;
        }
        let weight = coeff.to_i64().ok_or(Error::Internal {
            msg: "class coefficient overflow".into(),
        })?;
        let slot = if alt {
            f.alt_realization_slot(c, j)
        } else {
            f.realization_slot(c, j)
        };
        let poly = f.reroute_cycle(c, j, slot, retry)?;
        parts.push((poly, weight));
    }
    Ok(parts)
}

pub fn realizability_report(
    c: &SquareComplex,
    f: &HomologyFrame,
    w: &TwistWord,
) -> Result<Realizability> {
    Ok(flux_hom(c, f, w)?.realizability)
}

fn realizability_from(action: &ZMat, fluxes: &[FluxValue]) -> Realizability {
    let nonzero = fluxes.iter().any(|v| !v.reduced.is_zero());
    if nonzero {
        return Realizability {
            verdict: RealizabilityVerdict::Obstructed,
            notes: vec![
                "the flux homomorphism is nonzero, so the map is not the first return map of any Reeb flow"
                    .into(),
            ],
        };
    }
    let diff = zmat_sub(action, &zmat_identity(action.len()));
    let det = zmat_det(&diff);
    if !det.is_zero() {
        Realizability {
            verdict: RealizabilityVerdict::EigenvalueOneAbsent,
            notes: vec![format!(
                "det(action - id) = {det} is nonzero; on a surface with boundary a primitive correction would realize the map as a first return map"
            )],
        }
    } else {
        Realizability {
            verdict: RealizabilityVerdict::Inconclusive,
            notes: vec!["zero flux on the invariant sublattice does not by itself realize the map".into()],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders;
    use crate::curves::q;
    use crate::homology::build_frame;

    /// Torus with a widened alpha cylinder: three squares in one alpha
    /// cycle, three beta loops. The two outer beta loops are disjoint,
    /// homologous and non-separating, and the regions between their cores
    /// have areas 1 and 2, so this pins the sign and magnitude of the
    /// boundary correction.
    fn three_square_torus() -> SquareComplex {
        SquareComplex::new(
            vec![("a1".into(), vec![0, 1, 2])],
            vec![
                ("b1".into(), vec![0]),
                ("b2".into(), vec![1]),
                ("b3".into(), vec![2]),
            ],
            vec![1, 1, 1],
        )
        .unwrap()
    }

    #[test]
    fn oracle_on_identical_curves_is_zero() {
        let c = builders::torus();
        let f = build_frame(&c).unwrap();
        let p = builders::core_polyline(&c, c.curve_by_name("a1").unwrap(), 7, 0).unwrap();
        let v = winding_oracle(&c, &f, &p, &p).unwrap();
        assert!(v.raw.is_zero());
    }

    #[test]
    fn oracle_on_pushoff_annulus() {
        // two parallel copies of the alpha core at heights t1 < t2 bound an
        // annulus of area (t2 - t1)
        let c = builders::torus();
        let r = crate::curves::Router::new(&c, crate::curves::standard_capacity(&c));
        let cyc = crate::curves::core_cycle(&c, c.curve_by_name("a1").unwrap());
        let p1 = r.route(&cyc, 4, 0).unwrap();
        let p2 = r.route(&cyc, 9, 0).unwrap();
        let t1 = r.base_param(4);
        let t2 = r.base_param(9);
        // the band [t1, t2] has oriented boundary p1 - p2, so the cycle
        // p2 - p1 caps with the negated band (up to the full torus)
        let area = winding_area(&c, &[(&p2, 1), (&p1, -1)]).unwrap();
        let diff = &t1 - &t2;
        assert!(
            area == diff || area == diff + q_int(1),
            "area = {area}"
        );
    }

    #[test]
    fn flux_undefined_off_the_invariant_lattice() {
        let c = builders::torus();
        let f = build_frame(&c).unwrap();
        let w = TwistWord::parse(&c, "a1^1").unwrap();
        let b_core = builders::core_polyline(&c, c.curve_by_name("b1").unwrap(), 8, 0).unwrap();
        match flux(&c, &f, &b_core, &w) {
            Err(Error::ClassNotInvariant) => {}
            other => panic!("expected ClassNotInvariant, got {other:?}"),
        }
    }

    #[test]
    fn flux_of_core_under_own_twist_is_zero() {
        let c = builders::torus();
        let f = build_frame(&c).unwrap();
        let w = TwistWord::parse(&c, "a1^1").unwrap();
        let a_core = builders::core_polyline(&c, c.curve_by_name("a1").unwrap(), 8, 0).unwrap();
        let v = flux(&c, &f, &a_core, &w).unwrap();
        assert!(v.raw.is_zero());
    }

    #[test]
    fn boundary_correction_matches_oracle_on_asymmetric_cylinders() {
        // word b1^1 * b3^-1 is Torelli; flux along the alpha core is the
        // area between the two vertical cores, which is 1 or 2 of 3 squares
        let c = three_square_torus();
        let f = build_frame(&c).unwrap();
        let w = TwistWord::parse(&c, "b1^1*b3^-1").unwrap();
        let a_core = builders::core_polyline(&c, c.curve_by_name("a1").unwrap(), 12, 0).unwrap();
        let v = flux(&c, &f, &a_core, &w).unwrap();
        let (image, _, _) = apply_word_detailed(&c, &a_core, &w);
        let oracle = winding_oracle(&c, &f, &a_core, &image).unwrap();
        assert_eq!(v.reduced, oracle.reduced, "flux {:?} oracle {:?}", v, oracle);
        assert!(v.reduced == q(1, 3) || v.reduced == q(2, 3), "reduced = {}", v.reduced);
    }

    #[test]
    fn reversing_the_class_negates_flux() {
        let c = three_square_torus();
        let f = build_frame(&c).unwrap();
        let w = TwistWord::parse(&c, "b1^1*b3^-1").unwrap();
        let a_core = builders::core_polyline(&c, c.curve_by_name("a1").unwrap(), 12, 0).unwrap();
        let v = flux(&c, &f, &a_core, &w).unwrap();
        let r = flux_parts(&c, &f, &[(a_core, -1)], &w).unwrap();
        assert_eq!((&v.raw + &r.raw).floor(), (&v.raw + &r.raw));
        assert!((v.raw + r.raw).is_integer());
    }

    #[test]
    fn separating_word_has_zero_flux_hom() {
        let c = builders::genus2_block();
        let f = build_frame(&c).unwrap();
        let w = TwistWord::parse(&c, "a1^1*b1^-1").unwrap();
        let report = flux_hom(&c, &f, &w).unwrap();
        assert!(report.torelli);
        assert_eq!(report.k_basis.len(), 4);
        for v in &report.fluxes {
            assert!(v.raw.is_zero(), "raw = {}", v.raw);
        }
        assert_eq!(
            report.realizability.verdict,
            RealizabilityVerdict::Inconclusive
        );
    }

    #[test]
    fn torus_anosov_has_empty_k_and_eigen_note() {
        let c = builders::torus();
        let f = build_frame(&c).unwrap();
        let w = TwistWord::parse(&c, "a1^1*b1^-1").unwrap();
        let report = flux_hom(&c, &f, &w).unwrap();
        assert!(report.k_basis.is_empty());
        assert_eq!(
            report.realizability.verdict,
            RealizabilityVerdict::EigenvalueOneAbsent
        );
    }
}
