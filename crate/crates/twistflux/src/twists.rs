//! Affine Dehn twists on polylines, with exact swept-area accounting,
//! affine block analysis, and pseudo-Anosov certification.
//!
//! Conventions, in a positively oriented chart: a positive twist about a
//! horizontal core of width w acts by (x, y) -> (x + k w y, y), a positive
//! twist about a vertical core by (x, y) -> (x, y - k w x). Both restrict to
//! the identity on the chart boundary once reduced modulo the width.

use crate::curves::{q_int, Pt, Polyline, Q, Seg};
use crate::error::{Error, Result};
use crate::surface::{CurveRef, Family, SquareComplex, SquareId};
use num::bigint::BigInt;
use num::{One, Signed, ToPrimitive, Zero};

/// A finite composition of Dehn twists; the rightmost letter acts first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistWord {
    pub letters: Vec<(CurveRef, i64)>,
}

impl TwistWord {
    pub fn parse(c: &SquareComplex, text: &str) -> Result<TwistWord> {
        let mut letters = Vec::new();
        for token in text.split('*') {
            let token = token.trim();
            if token.is_empty() {
                return Err(Error::WordSyntax {
                    msg: "empty factor".into(),
                });
            }
            let (name, power) = match token.split_once('^') {
                Some((n, p)) => {
                    let power: i64 = p.trim().parse().map_err(|_| Error::WordSyntax {
                        msg: format!("bad power `{}`", p.trim()),
                    })?;
                    (n.trim(), power)
                }
                None => (token, 1),
            };
            if power == 0 {
                return Err(Error::WordSyntax {
                    msg: format!("zero power on `{name}`"),
                });
            }
            let curve = c.curve_by_name(name)?;
            letters.push((curve, power));
        }
        if letters.is_empty() {
            return Err(Error::WordSyntax {
                msg: "empty word".into(),
            });
        }
        Ok(TwistWord { letters })
    }

    pub fn display(&self, c: &SquareComplex) -> String {
        self.letters
            .iter()
            .map(|(curve, k)| format!("{}^{}", c.curve_name(*curve), k))
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Concatenation: self acts after other.
    pub fn then_after(&self, other: &TwistWord) -> TwistWord {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        TwistWord { letters }
    }
}

/// Exact outcome of one twist application. `swept` is the signed area of the
/// straight-line shear isotopy track in normalized units (total surface area
/// 1). `boundary_wraps` counts the net full crossings of the cylinder, which
/// is the number of times the isotopy track wraps the exit boundary circle.
pub struct TwistOutcome {
    pub image: Polyline,
    pub swept: Q,
    pub boundary_wraps: i64,
}

/// Apply the k-th power of the positive twist about `curve` to `p`.
pub fn apply_twist(c: &SquareComplex, p: &Polyline, curve: CurveRef, k: i64) -> (Polyline, Q) {
    let out = apply_twist_detailed(c, p, curve, k);
    (out.image, out.swept)
}

pub fn apply_twist_detailed(
    c: &SquareComplex,
    p: &Polyline,
    curve: CurveRef,
    k: i64,
) -> TwistOutcome {
    let cyl = c.cylinder(curve);
    let w = cyl.width as i64;
    let mut in_cyl = vec![false; c.n_squares()];
    for &s in &cyl.squares {
        in_cyl[s] = true;
    }
    let n = p.segs.len();

    // chart coordinate along the cylinder (wrapping) and across it ([0,1])
    let split = |pt: &Pt| -> (Q, Q) {
        match curve.family {
            Family::Alpha => (pt.x.clone(), pt.y.clone()),
            Family::Beta => (pt.y.clone(), pt.x.clone()),
        }
    };
    let join = |along: Q, across: Q| -> Pt {
        match curve.family {
            Family::Alpha => Pt::new(along, across),
            Family::Beta => Pt::new(across, along),
        }
    };
    let to_chart = |seg: &Seg| -> (Pt, Pt) {
        (
            crate::curves::chart_point(c, curve, seg.square, &seg.a),
            crate::curves::chart_point(c, curve, seg.square, &seg.b),
        )
    };
    // sides where a polyline joint leaves the chart (the cylinder boundary)
    let boundary_side = |side: crate::surface::Side| -> bool {
        match curve.family {
            Family::Alpha => matches!(side, crate::surface::Side::North | crate::surface::Side::South),
            Family::Beta => matches!(side, crate::surface::Side::East | crate::surface::Side::West),
        }
    };
    // joint i sits between segs[i] and segs[i+1]; chart-continuous joints
    // keep a run going, everything else breaks it
    let is_break = |i: usize| -> bool {
        let cur = &p.segs[i];
        let nxt = &p.segs[(i + 1) % n];
        if !in_cyl[cur.square] || !in_cyl[nxt.square] {
            return true;
        }
        if cur.square == nxt.square && cur.b == nxt.a {
            return false;
        }
        match crate::curves::side_of(&cur.b) {
            Some(side) => boundary_side(side),
            None => true,
        }
    };

    // positive twists shear east over a horizontal core and south over a
    // vertical one; the sweep coefficient is +k*w for both
    let shear_map = match curve.family {
        Family::Alpha => q_int(k * w),
        Family::Beta => q_int(-k * w),
    };
    let wrap_sign: i64 = match curve.family {
        Family::Alpha => 1,
        Family::Beta => -1,
    };
    let sweep_coeff = q_int(k * w);
    let half = |x: &Q| x * x / q_int(2);

    let mut swept = Q::zero();
    let mut wraps: i64 = 0;
    let mut image: Vec<Seg> = Vec::with_capacity(n + 4);
    let mut process_run = |run: &[usize], closed: bool, image: &mut Vec<Seg>| {
        // lift the run to the cover of the chart unrolled along the core
        let mut lifted: Vec<(Q, Q, Q, Q)> = Vec::with_capacity(run.len());
        let mut offset = Q::zero();
        let mut prev_end: Option<(Q, Q)> = None;
        for &i in run {
            let (ca, cb) = to_chart(&p.segs[i]);
            let (mut la, xa) = split(&ca);
            let (mut lb, xb) = split(&cb);
            if let Some((pl, px)) = prev_end {
                let diff = &pl - &la;
                debug_assert!(px == xa, "run joint mismatch across the cylinder");
                debug_assert!((&diff / q_int(w)).is_integer());
                offset = diff;
            }
            la += &offset;
            lb += &offset;
            prev_end = Some((lb.clone(), xb.clone()));
            lifted.push((la, xa, lb, xb));
        }
        for (_, xa, _, xb) in &lifted {
            swept += &sweep_coeff * (half(xb) - half(xa));
        }
        if !closed {
            let first_across = lifted.first().unwrap().1.clone();
            let last_across = lifted.last().unwrap().3.clone();
            debug_assert!(first_across.is_integer() && last_across.is_integer());
            let d = (&last_across - &first_across).to_integer();
            wraps += wrap_sign * k * d.to_i64().unwrap_or(0);
        }
        for (la, xa, lb, xb) in lifted {
            let sa = &la + &shear_map * &xa;
            let sb = &lb + &shear_map * &xb;
            emit_clipped(c, &cyl, curve.family, (sa, xa), (sb, xb), &join, image);
        }
    };

    match (0..n).find(|&i| is_break(i)) {
        None => {
            // chart-closed loop: no boundary terms
            let run: Vec<usize> = (0..n).collect();
            process_run(&run, true, &mut image);
        }
        Some(b0) => {
            let mut run: Vec<usize> = Vec::new();
            for step in 1..=n {
                let idx = (b0 + step) % n;
                let seg = &p.segs[idx];
                if in_cyl[seg.square] {
                    run.push(idx);
                    if is_break(idx) {
                        process_run(&run, false, &mut image);
                        run.clear();
                    }
                } else {
                    debug_assert!(run.is_empty());
                    image.push(seg.clone());
                }
            }
            debug_assert!(run.is_empty());
        }
    }

    let swept_norm = swept / q_int(c.n_squares() as i64);
    TwistOutcome {
        image: Polyline { segs: image },
        swept: swept_norm,
        boundary_wraps: wraps,
    }
}

/// Split a sheared chart segment at integer lines of the along-coordinate
/// and emit the pieces in square frames, wrapping modulo the width.
fn emit_clipped(
    c: &SquareComplex,
    cyl: &crate::surface::Cylinder,
    family: Family,
    a: (Q, Q),
    b: (Q, Q),
    join: &dyn Fn(Q, Q) -> Pt,
    image: &mut Vec<Seg>,
) {
    let w = cyl.width as i64;
    let (la, xa) = a;
    let (lb, xb) = b;
    let mut cuts: Vec<Q> = vec![q_int(0)];
    if la != lb {
        let (lo, hi) = if la < lb {
            (la.clone(), lb.clone())
        } else {
            (lb.clone(), la.clone())
        };
        let mut j: BigInt = lo.floor().to_integer() + 1;
        let hi_floor = if hi.is_integer() {
            hi.to_integer() - 1
        } else {
            hi.floor().to_integer()
        };
        while j <= hi_floor {
            let jq = Q::from_integer(j.clone());
            // parameter along the segment at which the along-coordinate is j
            let t = (&jq - &la) / (&lb - &la);
            if t > q_int(0) && t < q_int(1) {
                cuts.push(t);
            }
            j += 1;
        }
    }
    cuts.push(q_int(1));
    cuts.sort();
    cuts.dedup();
    for pair in cuts.windows(2) {
        let (t0, t1) = (&pair[0], &pair[1]);
        if t0 == t1 {
            continue;
        }
        let at = |t: &Q| -> (Q, Q) {
            (
                &la + (&lb - &la) * t,
                &xa + (&xb - &xa) * t,
            )
        };
        let (l0, x0) = at(t0);
        let (l1, x1) = at(t1);
        let mid = (&l0 + &l1) / q_int(2);
        let col = mid.floor().to_integer();
        let col_i64 = col
            .to_i64()
            .expect("cylinder column fits in i64");
        let pos = col_i64.rem_euclid(w) as usize;
        let square: SquareId = cyl.squares[pos];
        let local = |l: Q, x: Q| -> Pt {
            let chart = join(l - Q::from_integer(col.clone()) + q_int(pos as i64), x);
            crate::curves::frame_point(c, CurveRef { family, index: cyl.curve.index }, square, &chart)
        };
        let pa = local(l0, x0);
        let pb = local(l1, x1);
        if pa == pb {
            continue;
        }
        image.push(Seg {
            square,
            a: pa,
            b: pb,
        });
    }
}

/// Word application, rightmost letter first.
pub fn apply_word(c: &SquareComplex, p: &Polyline, w: &TwistWord) -> (Polyline, Q) {
    let (image, swept, _) = apply_word_detailed(c, p, w);
    (image, swept)
}

/// As `apply_word`, additionally returning the accumulated boundary-wrap
/// counts per cylinder (the correction data needed by the flux computation).
pub fn apply_word_detailed(
    c: &SquareComplex,
    p: &Polyline,
    w: &TwistWord,
) -> (Polyline, Q, Vec<(CurveRef, i64)>) {
    let mut cur = p.clone();
    let mut total = Q::zero();
    let mut wraps: Vec<(CurveRef, i64)> = Vec::new();
    for (curve, k) in w.letters.iter().rev() {
        let out = apply_twist_detailed(c, &cur, *curve, *k);
        cur = out.image;
        total += out.swept;
        if out.boundary_wraps != 0 {
            match wraps.iter_mut().find(|(cr, _)| cr == curve) {
                Some((_, acc)) => *acc += out.boundary_wraps,
                None => wraps.push((*curve, out.boundary_wraps)),
            }
        }
    }
    wraps.retain(|(_, k)| *k != 0);
    (cur, total, wraps)
}

// ---- affine blocks and the pseudo-Anosov certificate ----

#[derive(Clone, Debug)]
pub struct Block {
    pub family: Family,
    pub letters: Vec<(CurveRef, i64)>,
    /// total shear k*w per cylinder of the family (untwisted cylinders 0)
    pub cylinder_shears: Vec<(CurveRef, i64)>,
    pub uniform: bool,
    /// the matrix entry when uniform: [[1, s],[0, 1]] for alpha blocks,
    /// [[1, 0],[s, 1]] for beta blocks
    pub shear: Option<i64>,
}

#[derive(Clone, Debug)]
pub struct BlockReport {
    pub blocks: Vec<Block>,
    pub all_uniform: bool,
}

pub fn affine_blocks(c: &SquareComplex, w: &TwistWord) -> BlockReport {
    let mut blocks: Vec<Block> = Vec::new();
    for (curve, k) in &w.letters {
        if let Some(last) = blocks.last_mut() {
            if last.family == curve.family {
                last.letters.push((*curve, *k));
                continue;
            }
        }
        blocks.push(Block {
            family: curve.family,
            letters: vec![(*curve, *k)],
            cylinder_shears: Vec::new(),
            uniform: false,
            shear: None,
        });
    }
    for block in &mut blocks {
        let cyls: Vec<_> = c
            .cylinders()
            .into_iter()
            .filter(|cy| cy.curve.family == block.family)
            .collect();
        let mut shears = Vec::new();
        for cy in &cyls {
            let total: i64 = block
                .letters
                .iter()
                .filter(|(cr, _)| *cr == cy.curve)
                .map(|(_, k)| k * cy.width as i64)
                .sum();
            shears.push((cy.curve, total));
        }
        let first = shears.first().map(|(_, s)| *s).unwrap_or(0);
        block.uniform = shears.iter().all(|(_, s)| *s == first);
        if block.uniform {
            block.shear = Some(match block.family {
                Family::Alpha => first,
                Family::Beta => -first,
            });
        }
        block.cylinder_shears = shears;
    }
    let all_uniform = blocks.iter().all(|b| b.uniform);
    BlockReport {
        blocks,
        all_uniform,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PAVerdict {
    PseudoAnosov,
    NotAffineCertifiable,
    ParabolicOrPeriodic,
}

impl PAVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            PAVerdict::PseudoAnosov => "pseudo-anosov",
            PAVerdict::NotAffineCertifiable => "not-affine-certifiable",
            PAVerdict::ParabolicOrPeriodic => "parabolic-or-periodic",
        }
    }
}

/// (p + q*sqrt(d)) / r with integer entries.
#[derive(Clone, Debug)]
pub struct QuadraticValue {
    pub p: BigInt,
    pub q: BigInt,
    pub d: BigInt,
    pub r: BigInt,
}

impl QuadraticValue {
    pub fn approx(&self) -> f64 {
        let sq = sqrt_approx(&self.d);
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        let q = self.q.to_f64().unwrap_or(f64::NAN);
        let r = self.r.to_f64().unwrap_or(f64::NAN);
        (p + q * sq) / r
    }
}

#[derive(Clone, Debug)]
pub struct Dilatation {
    /// coefficients of x^2 - trace x + 1
    pub trace: BigInt,
    /// trace^2 - 4
    pub discriminant: BigInt,
    /// larger root, within 1e-9
    pub approx: f64,
}

#[derive(Clone, Debug)]
pub struct PAResult {
    pub verdict: PAVerdict,
    pub blocks: BlockReport,
    pub matrix: Option<[[BigInt; 2]; 2]>,
    pub trace: Option<BigInt>,
    pub dilatation: Option<Dilatation>,
    /// slopes of the unstable and stable directions
    pub slopes: Option<(QuadraticValue, QuadraticValue)>,
}

pub fn pa_certificate(c: &SquareComplex, w: &TwistWord) -> PAResult {
    let blocks = affine_blocks(c, w);
    if !blocks.all_uniform {
        return PAResult {
            verdict: PAVerdict::NotAffineCertifiable,
            blocks,
            matrix: None,
            trace: None,
            dilatation: None,
            slopes: None,
        };
    }
    let mut m = [
        [BigInt::one(), BigInt::zero()],
        [BigInt::zero(), BigInt::one()],
    ];
    for block in &blocks.blocks {
        let s = BigInt::from(block.shear.unwrap());
        let bm = match block.family {
            Family::Alpha => [[BigInt::one(), s], [BigInt::zero(), BigInt::one()]],
            Family::Beta => [[BigInt::one(), BigInt::zero()], [s, BigInt::one()]],
        };
        m = mat2_mul(&m, &bm);
    }
    let trace = &m[0][0] + &m[1][1];
    let verdict = if trace.abs() > BigInt::from(2) {
        PAVerdict::PseudoAnosov
    } else {
        PAVerdict::ParabolicOrPeriodic
    };
    let (dilatation, slopes) = if verdict == PAVerdict::PseudoAnosov {
        let t = trace.abs();
        let disc = &t * &t - BigInt::from(4);
        let approx = (t.to_f64().unwrap() + sqrt_approx(&disc)) / 2.0;
        // eigenvector slope (lambda - a)/b for eigenvalue lambda of
        // [[a, b], [c, d]]; lambda = (tr +- sqrt(disc))/2
        let slope = |sign: i64| -> QuadraticValue {
            let b2 = &m[0][1] * BigInt::from(2);
            QuadraticValue {
                p: &trace - &m[0][0] * BigInt::from(2),
                q: BigInt::from(sign),
                d: (&trace * &trace - BigInt::from(4)).clone(),
                r: b2,
            }
        };
        let dil = Dilatation {
            trace: t,
            discriminant: disc,
            approx,
        };
        (Some(dil), Some((slope(1), slope(-1))))
    } else {
        (None, None)
    };
    PAResult {
        verdict,
        blocks,
        matrix: Some(m),
        trace: Some(trace),
        dilatation,
        slopes,
    }
}

fn mat2_mul(a: &[[BigInt; 2]; 2], b: &[[BigInt; 2]; 2]) -> [[BigInt; 2]; 2] {
    let mut out = [
        [BigInt::zero(), BigInt::zero()],
        [BigInt::zero(), BigInt::zero()],
    ];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
        }
    }
    out
}

/// Floor square root scaled to 1e-12 absolute precision.
pub fn sqrt_approx(d: &BigInt) -> f64 {
    if d.is_negative() {
        return f64::NAN;
    }
    let scale: BigInt = BigInt::from(10).pow(24);
    let s = (d * &scale).sqrt();
    s.to_f64().unwrap_or(f64::NAN) / 1e12
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders;
    use crate::curves::{polyline_from_traversal, q, TravStep, Traversal};
    use crate::surface::Side;

    fn torus_alpha_core(c: &SquareComplex, t: Q) -> Polyline {
        polyline_from_traversal(
            c,
            &Traversal {
                steps: vec![TravStep {
                    square: 0,
                    entry: Side::West,
                    exit: Side::East,
                    t,
                }],
            },
        )
        .unwrap()
    }

    fn torus_beta_core(c: &SquareComplex, t: Q) -> Polyline {
        polyline_from_traversal(
            c,
            &Traversal {
                steps: vec![TravStep {
                    square: 0,
                    entry: Side::South,
                    exit: Side::North,
                    t,
                }],
            },
        )
        .unwrap()
    }

    #[test]
    fn twisting_the_core_along_itself_sweeps_zero() {
        let c = builders::torus();
        let p = torus_alpha_core(&c, q(1, 2));
        let a1 = c.curve_by_name("a1").unwrap();
        let (img, swept) = apply_twist(&c, &p, a1, 1);
        assert!(swept.is_zero());
        img.validate(&c).unwrap();
    }

    #[test]
    fn torus_twist_image_wraps_once() {
        let c = builders::torus();
        let p = torus_beta_core(&c, q(1, 3));
        let a1 = c.curve_by_name("a1").unwrap();
        let out = apply_twist_detailed(&c, &p, a1, 1);
        out.image.validate(&c).unwrap();
        assert_eq!(out.boundary_wraps, 1);
        // sweep of a single full upward crossing: k*w*(1-0)/2 / N = 1/2
        assert_eq!(out.swept, q(1, 2));
    }

    #[test]
    fn power_equals_iterated_single_twists_in_sweep() {
        let c = builders::genus2_block();
        let b1 = c.curve_by_name("b1").unwrap();
        let a_core = builders::core_polyline(&c, c.curve_by_name("a1").unwrap(), 3, 0).unwrap();
        let (_, s3) = apply_twist(&c, &a_core, b1, 3);
        let mut cur = a_core.clone();
        let mut total = Q::zero();
        for _ in 0..3 {
            let (img, s) = apply_twist(&c, &cur, b1, 1);
            cur = img;
            total += s;
        }
        assert_eq!(s3, total);
    }

    #[test]
    fn separating_twist_sweeps_zero_on_closed_curves() {
        let c = builders::genus2_block();
        let b1 = c.curve_by_name("b1").unwrap();
        let a_core = builders::core_polyline(&c, c.curve_by_name("a1").unwrap(), 3, 0).unwrap();
        let out = apply_twist_detailed(&c, &a_core, b1, -2);
        assert!(out.swept.is_zero());
        assert_eq!(out.boundary_wraps, 0);
        out.image.validate(&c).unwrap();
    }

    #[test]
    fn word_parsing_round_trips() {
        let (c, _, _) = builders::genus5_paper();
        let w = TwistWord::parse(&c, "a2^1*a1^9*b1^-9*b2^-1").unwrap();
        assert_eq!(w, builders::paper_word());
        assert_eq!(w.display(&c), "a2^1*a1^9*b1^-9*b2^-1");
        assert!(TwistWord::parse(&c, "a1^0").is_err());
        assert!(TwistWord::parse(&c, "zz^1").is_err());
    }

    #[test]
    fn paper_word_blocks_and_matrix() {
        let (c, _, _) = builders::genus5_paper();
        let w = builders::paper_word();
        let report = affine_blocks(&c, &w);
        assert_eq!(report.blocks.len(), 2);
        assert!(report.all_uniform);
        assert_eq!(report.blocks[0].shear, Some(18));
        assert_eq!(report.blocks[1].shear, Some(18));
        let pa = pa_certificate(&c, &w);
        assert_eq!(pa.verdict, PAVerdict::PseudoAnosov);
        let m = pa.matrix.unwrap();
        let as_i64 = |x: &BigInt| x.to_i64().unwrap();
        assert_eq!(
            [
                [as_i64(&m[0][0]), as_i64(&m[0][1])],
                [as_i64(&m[1][0]), as_i64(&m[1][1])]
            ],
            [[325, 18], [18, 1]]
        );
        assert_eq!(pa.trace.unwrap(), BigInt::from(326));
        let lam = pa.dilatation.unwrap().approx;
        let expect = (326.0 + (326.0f64 * 326.0 - 4.0).sqrt()) / 2.0;
        assert!((lam - expect).abs() < 1e-9);
    }

    #[test]
    fn single_alpha_twist_is_not_uniform_on_genus5() {
        let (c, _, _) = builders::genus5_paper();
        let w = TwistWord::parse(&c, "a1^1").unwrap();
        let report = affine_blocks(&c, &w);
        assert!(!report.all_uniform);
        let pa = pa_certificate(&c, &w);
        assert_eq!(pa.verdict, PAVerdict::NotAffineCertifiable);
    }

    #[test]
    fn torus_anosov_word() {
        let c = builders::torus();
        let w = TwistWord::parse(&c, "a1^1*b1^-1").unwrap();
        let pa = pa_certificate(&c, &w);
        assert_eq!(pa.verdict, PAVerdict::PseudoAnosov);
        let m = pa.matrix.unwrap();
        assert_eq!(m[0][0], BigInt::from(2));
        assert_eq!(m[0][1], BigInt::one());
        assert_eq!(m[1][0], BigInt::one());
        assert_eq!(m[1][1], BigInt::one());
    }

    #[test]
    fn image_polylines_stay_valid_under_words() {
        let (c, _, gamma) = builders::genus5_paper();
        let p = polyline_from_traversal(&c, &gamma).unwrap();
        let w = builders::paper_word();
        let (img, _) = apply_word(&c, &p, &w);
        img.validate(&c).unwrap();
    }
}
