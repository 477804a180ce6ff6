//! Closed curves as exact-rational polylines resolved into squares.
//!
//! All coordinates are arbitrary-precision rationals; nothing in this module
//! touches floating point. A polyline is a cyclic list of segments, one
//! square each, whose consecutive endpoints either coincide inside a square
//! or match across a side gluing.

use crate::error::{Error, Result};
use crate::surface::{CurveRef, Family, Side, SquareComplex, SquareId};
use num::{BigInt, BigRational, One, Signed, Zero};
use std::collections::HashMap;

pub type Q = BigRational;

pub fn q_int(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

pub fn q(num: i64, den: i64) -> Q {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parse `p/q` or a bare integer.
pub fn q_parse(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let num: BigInt = a.trim().parse().ok()?;
            let den: BigInt = b.trim().parse().ok()?;
            if den.is_zero() {
                return None;
            }
            Some(BigRational::new(num, den))
        }
        None => {
            let num: BigInt = s.parse().ok()?;
            Some(BigRational::from_integer(num))
        }
    }
}

pub fn q_string(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Pt {
    pub x: Q,
    pub y: Q,
}

impl Pt {
    pub fn new(x: Q, y: Q) -> Self {
        Pt { x, y }
    }
}

#[derive(Clone, Debug)]
pub struct Seg {
    pub square: SquareId,
    pub a: Pt,
    pub b: Pt,
}

/// Closed piecewise-affine curve. Joints sit either on square sides (matched
/// across the gluing) or strictly inside a square (where two segments of the
/// same square meet point-to-point).
#[derive(Clone, Debug)]
pub struct Polyline {
    pub segs: Vec<Seg>,
}

/// User-facing curve description: per visited square, the entry and exit
/// sides plus the exit-side parameter. Side parameters run with ascending x
/// on N/S sides and ascending y on E/W sides, in the square's alpha frame.
#[derive(Clone, Debug)]
pub struct Traversal {
    pub steps: Vec<TravStep>,
}

#[derive(Clone, Debug)]
pub struct TravStep {
    pub square: SquareId,
    pub entry: Side,
    pub exit: Side,
    pub t: Q,
}

pub fn side_point(side: Side, t: &Q) -> Pt {
    match side {
        Side::North => Pt::new(t.clone(), q_int(1)),
        Side::South => Pt::new(t.clone(), q_int(0)),
        Side::East => Pt::new(q_int(1), t.clone()),
        Side::West => Pt::new(q_int(0), t.clone()),
    }
}

/// Which side a point lies on, if exactly one. Corners return None.
pub fn side_of(p: &Pt) -> Option<Side> {
    let on_w = p.x.is_zero();
    let on_e = p.x == q_int(1);
    let on_s = p.y.is_zero();
    let on_n = p.y == q_int(1);
    match (on_w, on_e, on_s, on_n) {
        (true, false, false, false) => Some(Side::West),
        (false, true, false, false) => Some(Side::East),
        (false, false, true, false) => Some(Side::South),
        (false, false, false, true) => Some(Side::North),
        _ => None,
    }
}

pub fn side_param(side: Side, p: &Pt) -> Q {
    match side {
        Side::North | Side::South => p.x.clone(),
        Side::East | Side::West => p.y.clone(),
    }
}

/// Image of a point on `(s, side)` under the side gluing.
pub fn glue_point(c: &SquareComplex, s: SquareId, side: Side, p: &Pt) -> (SquareId, Side, Pt) {
    let (t, t_side, reversed) = c.glued_side(s, side);
    let mut param = side_param(side, p);
    if reversed {
        param = q_int(1) - param;
    }
    (t, t_side, side_point(t_side, &param))
}

impl Polyline {
    pub fn reversed(&self) -> Polyline {
        let segs = self
            .segs
            .iter()
            .rev()
            .map(|s| Seg {
                square: s.square,
                a: s.b.clone(),
                b: s.a.clone(),
            })
            .collect();
        Polyline { segs }
    }

    /// Checks closure: each joint is either an interior meeting point within
    /// one square or a matched side crossing.
    pub fn validate(&self, c: &SquareComplex) -> Result<()> {
        if self.segs.is_empty() {
            return Err(Error::Internal {
                msg: "empty polyline".into(),
            });
        }
        let zero = q_int(0);
        let one = q_int(1);
        for (i, s) in self.segs.iter().enumerate() {
            if s.square >= c.n_squares() {
                return Err(Error::Internal {
                    msg: format!("segment {i} references square {}", s.square),
                });
            }
            if s.a == s.b {
                return Err(Error::Internal {
                    msg: format!("segment {i} has zero length"),
                });
            }
            for p in [&s.a, &s.b] {
                if p.x < zero || p.x > one || p.y < zero || p.y > one {
                    return Err(Error::Internal {
                        msg: format!("segment {i} endpoint outside the unit square"),
                    });
                }
            }
        }
        for i in 0..self.segs.len() {
            let cur = &self.segs[i];
            let nxt = &self.segs[(i + 1) % self.segs.len()];
            if cur.square == nxt.square && cur.b == nxt.a {
                continue;
            }
            match side_of(&cur.b) {
                Some(side) => {
                    let (t, _, img) = glue_point(c, cur.square, side, &cur.b);
                    if t != nxt.square || img != nxt.a {
                        return Err(Error::Internal {
                            msg: format!("joint after segment {i} does not match the gluing"),
                        });
                    }
                }
                None => {
                    return Err(Error::Internal {
                        msg: format!("joint after segment {i} is not on a side"),
                    });
                }
            }
        }
        Ok(())
    }
}

pub fn polyline_from_traversal(c: &SquareComplex, trav: &Traversal) -> Result<Polyline> {
    let n = trav.steps.len();
    if n == 0 {
        return Err(Error::InconsistentTraversal {
            step: 0,
            msg: "empty traversal".into(),
        });
    }
    let zero = q_int(0);
    let one = q_int(1);
    for (i, st) in trav.steps.iter().enumerate() {
        if st.square >= c.n_squares() {
            return Err(Error::InconsistentTraversal {
                step: i,
                msg: format!("square {} out of range", st.square),
            });
        }
        if st.entry == st.exit {
            return Err(Error::InconsistentTraversal {
                step: i,
                msg: "entry side equals exit side".into(),
            });
        }
        if st.t <= zero || st.t >= one {
            return Err(Error::InconsistentTraversal {
                step: i,
                msg: "side parameter must lie strictly between 0 and 1".into(),
            });
        }
    }
    // entry point of step i+1 = glued image of exit point of step i
    let mut entries: Vec<Option<Pt>> = vec![None; n];
    for i in 0..n {
        let st = &trav.steps[i];
        let nxt = &trav.steps[(i + 1) % n];
        let exit_pt = side_point(st.exit, &st.t);
        let (t_sq, t_side, img) = glue_point(c, st.square, st.exit, &exit_pt);
        if t_sq != nxt.square || t_side != nxt.entry {
            return Err(Error::InconsistentTraversal {
                step: i,
                msg: format!(
                    "exit side of square {} glues to square {} side {:?}, not square {} side {:?}",
                    st.square, t_sq, t_side, nxt.square, nxt.entry
                ),
            });
        }
        entries[(i + 1) % n] = Some(img);
    }
    let mut segs = Vec::with_capacity(n);
    for i in 0..n {
        let st = &trav.steps[i];
        let a = entries[i].clone().unwrap();
        let b = side_point(st.exit, &st.t);
        if a == b {
            return Err(Error::InconsistentTraversal {
                step: i,
                msg: "zero-length chord".into(),
            });
        }
        segs.push(Seg {
            square: st.square,
            a,
            b,
        });
    }
    let p = Polyline { segs };
    p.validate(c)?;
    Ok(p)
}

/// Inverse of `polyline_from_traversal` up to isotopy: each maximal run of
/// segments within one square becomes a single chord between its entry and
/// exit side points, and a run that enters and exits through the same side
/// is pulled across that side into the neighboring square (merging the two
/// adjacent runs there). The result is a traversal of a curve isotopic to
/// the input.
pub fn traversal_of(c: &SquareComplex, p: &Polyline) -> Result<Traversal> {
    p.validate(c)?;
    let n = p.segs.len();
    // find side-joint boundaries
    let mut boundary = Vec::new();
    for i in 0..n {
        let cur = &p.segs[i];
        let nxt = &p.segs[(i + 1) % n];
        if !(cur.square == nxt.square && cur.b == nxt.a) {
            boundary.push(i);
        }
    }
    if boundary.is_empty() {
        return Err(Error::NotTransverse {
            msg: "polyline never crosses a side; cannot express as a traversal".into(),
        });
    }
    let mut steps = Vec::new();
    for bi in 0..boundary.len() {
        let end = boundary[bi];
        let start = (boundary[(bi + boundary.len() - 1) % boundary.len()] + 1) % n;
        let sq = p.segs[start].square;
        let entry_pt = &p.segs[start].a;
        let exit_pt = &p.segs[end].b;
        let entry = side_of(entry_pt).ok_or_else(|| Error::NotTransverse {
            msg: "run entry point is not on a side".into(),
        })?;
        let exit = side_of(exit_pt).ok_or_else(|| Error::NotTransverse {
            msg: "run exit point is not on a side".into(),
        })?;
        steps.push(TravStep {
            square: sq,
            entry,
            exit,
            t: side_param(exit, exit_pt),
        });
    }
    // remove bounces: a visit with entry == exit retracts across that side,
    // merging the two neighboring visits (which sit in the glued square)
    loop {
        let m = steps.len();
        if m < 3 {
            return Err(Error::NotTransverse {
                msg: "polyline retracts into a single square".into(),
            });
        }
        let Some(i) = steps.iter().position(|st| st.entry == st.exit) else {
            break;
        };
        let prev = (i + m - 1) % m;
        let next = (i + 1) % m;
        if steps[prev].square != steps[next].square {
            return Err(Error::Internal {
                msg: "bounce neighbors disagree".into(),
            });
        }
        steps[prev].exit = steps[next].exit;
        steps[prev].t = steps[next].t.clone();
        if next > i {
            steps.remove(next);
            steps.remove(i);
        } else {
            steps.remove(i);
            steps.remove(next);
        }
    }
    Ok(Traversal { steps })
}

// ---- chart coordinates ----

/// Point of `square` (alpha-frame coordinates) in the chart of `cyl`.
/// Alpha charts are [0,width]x[0,1]; beta charts are [0,1]x[0,width] and a
/// flip of -1 rotates the square by pi before offsetting.
pub fn chart_point(c: &SquareComplex, cyl_curve: CurveRef, square: SquareId, p: &Pt) -> Pt {
    let (cyl_idx, offset) = c.position(cyl_curve.family, square);
    debug_assert_eq!(cyl_idx, cyl_curve.index);
    let off = q_int(offset as i64);
    match cyl_curve.family {
        Family::Alpha => Pt::new(&p.x + off, p.y.clone()),
        Family::Beta => {
            if c.flip(square) > 0 {
                Pt::new(p.x.clone(), &p.y + off)
            } else {
                Pt::new(q_int(1) - &p.x, (q_int(1) - &p.y) + off)
            }
        }
    }
}

/// Inverse of `chart_point` given the square.
pub fn frame_point(c: &SquareComplex, cyl_curve: CurveRef, square: SquareId, p: &Pt) -> Pt {
    let (_, offset) = c.position(cyl_curve.family, square);
    let off = q_int(offset as i64);
    match cyl_curve.family {
        Family::Alpha => Pt::new(&p.x - off, p.y.clone()),
        Family::Beta => {
            if c.flip(square) > 0 {
                Pt::new(p.x.clone(), &p.y - off)
            } else {
                Pt::new(q_int(1) - &p.x, q_int(1) - (&p.y - off))
            }
        }
    }
}

/// Chart coordinates of the segments of `p` lying in the given cylinder.
/// Returns (segment index, chart endpoints).
pub fn to_chart(c: &SquareComplex, cyl_curve: CurveRef, p: &Polyline) -> Vec<(usize, Pt, Pt)> {
    let cyl = c.cylinder(cyl_curve);
    let mut in_cyl = vec![false; c.n_squares()];
    for &s in &cyl.squares {
        in_cyl[s] = true;
    }
    let mut out = Vec::new();
    for (i, seg) in p.segs.iter().enumerate() {
        if in_cyl[seg.square] {
            out.push((
                i,
                chart_point(c, cyl_curve, seg.square, &seg.a),
                chart_point(c, cyl_curve, seg.square, &seg.b),
            ));
        }
    }
    out
}

// ---- crossings ----

fn cross(ax: &Q, ay: &Q, bx: &Q, by: &Q) -> Q {
    ax * by - ay * bx
}

enum SegX {
    None,
    Proper(i8),
    Degenerate(&'static str),
}

fn seg_intersection(p: &Seg, r: &Seg) -> SegX {
    let d1x = &p.b.x - &p.a.x;
    let d1y = &p.b.y - &p.a.y;
    let d2x = &r.b.x - &r.a.x;
    let d2y = &r.b.y - &r.a.y;
    let wx = &r.a.x - &p.a.x;
    let wy = &r.a.y - &p.a.y;
    let denom = cross(&d1x, &d1y, &d2x, &d2y);
    let zero = Q::zero();
    let one = Q::one();
    if denom.is_zero() {
        if !cross(&wx, &wy, &d1x, &d1y).is_zero() {
            return SegX::None;
        }
        // collinear: project r's endpoints on p's direction
        let dot = |ux: &Q, uy: &Q| ux * &d1x + uy * &d1y;
        let len2 = dot(&d1x, &d1y);
        let t0 = dot(&wx, &wy) / &len2;
        let t1 = &t0 + dot(&d2x, &d2y) / &len2;
        let (lo, hi) = if t0 <= t1 {
            (t0, t1)
        } else {
            (t1.clone(), t0)
        };
        if hi < zero || lo > one {
            SegX::None
        } else {
            SegX::Degenerate("collinear segments touch or overlap")
        }
    } else {
        let t = cross(&wx, &wy, &d2x, &d2y) / &denom;
        let u = cross(&wx, &wy, &d1x, &d1y) / &denom;
        let t_in = t > zero && t < one;
        let u_in = u > zero && u < one;
        let t_closed = t >= zero && t <= one;
        let u_closed = u >= zero && u <= one;
        if t_in && u_in {
            SegX::Proper(if denom.is_positive() { 1 } else { -1 })
        } else if t_closed && u_closed {
            SegX::Degenerate("segments touch at an endpoint")
        } else {
            SegX::None
        }
    }
}

fn bucket_by_square(p: &Polyline) -> HashMap<SquareId, Vec<usize>> {
    let mut m: HashMap<SquareId, Vec<usize>> = HashMap::new();
    for (i, s) in p.segs.iter().enumerate() {
        m.entry(s.square).or_default().push(i);
    }
    m
}

fn minmax<'a>(a: &'a Q, b: &'a Q) -> (&'a Q, &'a Q) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn bbox_disjoint(p: &Seg, q: &Seg) -> bool {
    let (pxl, pxh) = minmax(&p.a.x, &p.b.x);
    let (qxl, qxh) = minmax(&q.a.x, &q.b.x);
    if pxh < qxl || qxh < pxl {
        return true;
    }
    let (pyl, pyh) = minmax(&p.a.y, &p.b.y);
    let (qyl, qyh) = minmax(&q.a.y, &q.b.y);
    pyh < qyl || qyh < pyl
}

/// Signed crossing number: sum over transverse interior intersections of the
/// orientation sign of (tangent of p, tangent of q).
pub fn crossing_number(p: &Polyline, q: &Polyline) -> Result<i64> {
    let buckets = bucket_by_square(q);
    let mut total = 0i64;
    for sp in &p.segs {
        if let Some(idxs) = buckets.get(&sp.square) {
            for &j in idxs {
                if bbox_disjoint(sp, &q.segs[j]) {
                    continue;
                }
                match seg_intersection(sp, &q.segs[j]) {
                    SegX::None => {}
                    SegX::Proper(sign) => total += sign as i64,
                    SegX::Degenerate(msg) => {
                        return Err(Error::NotTransverse {
                            msg: format!("square {}: {}", sp.square, msg),
                        })
                    }
                }
            }
        }
    }
    Ok(total)
}

/// Number of transverse intersection points, unsigned.
pub fn unsigned_crossings(p: &Polyline, q: &Polyline) -> Result<u64> {
    let buckets = bucket_by_square(q);
    let mut total = 0u64;
    for sp in &p.segs {
        if let Some(idxs) = buckets.get(&sp.square) {
            for &j in idxs {
                if bbox_disjoint(sp, &q.segs[j]) {
                    continue;
                }
                match seg_intersection(sp, &q.segs[j]) {
                    SegX::None => {}
                    SegX::Proper(_) => total += 1,
                    SegX::Degenerate(msg) => {
                        return Err(Error::NotTransverse {
                            msg: format!("square {}: {}", sp.square, msg),
                        })
                    }
                }
            }
        }
    }
    Ok(total)
}

// ---- graph cycles and deterministic routing ----

/// Directed strand arc of the 4-valent graph alpha union beta. The alpha edge
/// based at `s` runs to `next_alpha(s)`, the beta edge to `next_beta(s)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct EdgeRef {
    pub kind: Family,
    pub base: SquareId,
}

#[derive(Clone, Copy, Debug)]
pub struct GraphStep {
    pub edge: EdgeRef,
    pub forward: bool,
}

pub type GraphCycle = Vec<GraphStep>;

pub fn edge_endpoints(c: &SquareComplex, e: EdgeRef) -> (SquareId, SquareId) {
    match e.kind {
        Family::Alpha => (e.base, c.next_alpha(e.base)),
        Family::Beta => (e.base, c.next_beta(e.base)),
    }
}

pub fn step_from_to(c: &SquareComplex, st: &GraphStep) -> (SquareId, SquareId) {
    let (u, v) = edge_endpoints(c, st.edge);
    if st.forward {
        (u, v)
    } else {
        (v, u)
    }
}

/// Deterministic general-position routing of graph cycles into polylines.
/// The k-th routed cycle crosses edges at parameter (k+1)/(capacity+2);
/// repeated visits of one edge get per-visit offsets of 1/(denom * 2^retry).
pub struct Router<'a> {
    c: &'a SquareComplex,
    capacity: usize,
    offset_denom: i64,
}

impl<'a> Router<'a> {
    pub fn new(c: &'a SquareComplex, capacity: usize) -> Self {
        let denom = 64 * (capacity as i64) * (c.n_squares() as i64);
        Router {
            c,
            capacity,
            offset_denom: denom,
        }
    }

    pub fn with_denominator(c: &'a SquareComplex, capacity: usize, denom: i64) -> Self {
        Router {
            c,
            capacity,
            offset_denom: denom.max(4),
        }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn base_param(&self, index: usize) -> Q {
        q((index as i64) + 1, (self.capacity as i64) + 2)
    }

    /// Route a cycle at slot `index`. `retry` doubles the offset denominator.
    pub fn route(&self, cycle: &GraphCycle, index: usize, retry: u32) -> Result<Polyline> {
        assert!(index < self.capacity, "router slot out of range");
        let c = self.c;
        let t = self.base_param(index);
        let eps = Q::new(
            BigInt::from(1),
            BigInt::from(self.offset_denom) * BigInt::from(2i64).pow(retry),
        );
        let mut visits: HashMap<EdgeRef, i64> = HashMap::new();
        // crossing parameter per step, on the edge's canonical side
        let mut params = Vec::with_capacity(cycle.len());
        for st in cycle {
            let v = visits.entry(st.edge).or_insert(0);
            let p = &t + &eps * q_int(*v);
            *v += 1;
            if p >= q_int(1) || p <= q_int(0) {
                return Err(Error::NotTransverse {
                    msg: "routing parameter escaped (0,1); retry with a larger denominator".into(),
                });
            }
            params.push(p);
        }
        // exit point (in the from-square) and entry point (in the to-square)
        // of each step
        let mut exits = Vec::with_capacity(cycle.len());
        let mut entries = Vec::with_capacity(cycle.len());
        for (st, p) in cycle.iter().zip(&params) {
            let (exit_pt, entry_pt) = self.edge_points(st, p);
            exits.push(exit_pt);
            entries.push(entry_pt);
        }
        let n = cycle.len();
        let mut segs = Vec::with_capacity(n);
        for i in 0..n {
            let prev = (i + n - 1) % n;
            let (from_sq, _) = step_from_to(c, &cycle[i]);
            let (_, prev_to) = step_from_to(c, &cycle[prev]);
            if prev_to != from_sq {
                return Err(Error::Internal {
                    msg: format!("graph cycle breaks at step {i}"),
                });
            }
            let a = entries[prev].clone();
            let b = exits[i].clone();
            if a == b {
                return Err(Error::NotTransverse {
                    msg: "routed chord degenerated to a point".into(),
                });
            }
            segs.push(Seg {
                square: from_sq,
                a,
                b,
            });
        }
        let poly = Polyline { segs };
        poly.validate(c)?;
        Ok(poly)
    }

    fn edge_points(&self, st: &GraphStep, p: &Q) -> (Pt, Pt) {
        let c = self.c;
        match st.edge.kind {
            Family::Alpha => {
                let fwd_exit = Pt::new(q_int(1), p.clone());
                let fwd_entry = Pt::new(q_int(0), p.clone());
                if st.forward {
                    (fwd_exit, fwd_entry)
                } else {
                    (fwd_entry, fwd_exit)
                }
            }
            Family::Beta => {
                // p is the chart x-parameter shared by both squares
                let s = st.edge.base;
                let tq = c.next_beta(s);
                let exit_in_s = if c.flip(s) > 0 {
                    Pt::new(p.clone(), q_int(1))
                } else {
                    Pt::new(q_int(1) - p, q_int(0))
                };
                let entry_in_t = if c.flip(tq) > 0 {
                    Pt::new(p.clone(), q_int(0))
                } else {
                    Pt::new(q_int(1) - p, q_int(1))
                };
                if st.forward {
                    (exit_in_s, entry_in_t)
                } else {
                    (entry_in_t, exit_in_s)
                }
            }
        }
    }
}

/// Shared router capacity: slots for the spanning cycles, one core per
/// cylinder, two realization copies per spanning cycle, and spare probe
/// slots.
pub fn standard_capacity(c: &SquareComplex) -> usize {
    let n = c.n_squares();
    let n_cyls = c.alpha_cycles().len() + c.beta_cycles().len();
    3 * (n + 1) + n_cyls + 16
}

/// The core of a cylinder as a graph cycle (its own strand arcs, forward).
pub fn core_cycle(c: &SquareComplex, curve: CurveRef) -> GraphCycle {
    let cyl = c.cylinder(curve);
    cyl.squares
        .iter()
        .map(|&s| GraphStep {
            edge: EdgeRef {
                kind: curve.family,
                base: s,
            },
            forward: true,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders;

    #[test]
    fn torus_core_traversal() {
        let c = builders::torus();
        let trav = Traversal {
            steps: vec![TravStep {
                square: 0,
                entry: Side::West,
                exit: Side::East,
                t: q(1, 2),
            }],
        };
        let p = polyline_from_traversal(&c, &trav).unwrap();
        assert_eq!(p.segs.len(), 1);
        assert_eq!(p.segs[0].a, Pt::new(q_int(0), q(1, 2)));
        assert_eq!(p.segs[0].b, Pt::new(q_int(1), q(1, 2)));
    }

    #[test]
    fn inconsistent_traversal_is_rejected() {
        let c = builders::genus2_block();
        // two steps that are not glued to each other
        let trav = Traversal {
            steps: vec![
                TravStep {
                    square: 0,
                    entry: Side::West,
                    exit: Side::East,
                    t: q(1, 2),
                },
                TravStep {
                    square: 0,
                    entry: Side::West,
                    exit: Side::East,
                    t: q(1, 3),
                },
            ],
        };
        match polyline_from_traversal(&c, &trav) {
            Err(Error::InconsistentTraversal { .. }) => {}
            other => panic!("expected InconsistentTraversal, got {other:?}"),
        }
    }

    #[test]
    fn torus_cores_cross_once() {
        let c = builders::torus();
        let alpha = Traversal {
            steps: vec![TravStep {
                square: 0,
                entry: Side::West,
                exit: Side::East,
                t: q(1, 2),
            }],
        };
        let beta = Traversal {
            steps: vec![TravStep {
                square: 0,
                entry: Side::South,
                exit: Side::North,
                t: q(1, 3),
            }],
        };
        let pa = polyline_from_traversal(&c, &alpha).unwrap();
        let pb = polyline_from_traversal(&c, &beta).unwrap();
        let x = crossing_number(&pa, &pb).unwrap();
        assert_eq!(x.abs(), 1);
        assert_eq!(
            crossing_number(&pa, &pb).unwrap(),
            -crossing_number(&pb, &pa).unwrap()
        );
    }

    #[test]
    fn parallel_copies_do_not_cross() {
        let c = builders::torus();
        let mk = |t: Q| {
            polyline_from_traversal(
                &c,
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
        };
        let p1 = mk(q(1, 3));
        let p2 = mk(q(1, 5));
        assert_eq!(crossing_number(&p1, &p2).unwrap(), 0);
    }

    #[test]
    fn chart_round_trip() {
        let c = builders::genus2_block();
        let curve = CurveRef {
            family: Family::Beta,
            index: 0,
        };
        for s in 0..c.n_squares() {
            let p = Pt::new(q(1, 3), q(2, 7));
            let ch = chart_point(&c, curve, s, &p);
            let back = frame_point(&c, curve, s, &ch);
            assert_eq!(back, p);
        }
    }

    #[test]
    fn flipped_square_chart_uses_rotation() {
        // flip -1 means the beta chart sees (1-x, 1-y) before offsetting
        let c = builders::genus2_block();
        let curve = CurveRef {
            family: Family::Beta,
            index: 0,
        };
        let cyl = c.cylinder(curve);
        if let Some(&s) = cyl.squares.iter().find(|&&s| c.flip(s) < 0) {
            let (_, off) = c.position(Family::Beta, s);
            let p = Pt::new(q(1, 4), q(1, 3));
            let ch = chart_point(&c, curve, s, &p);
            assert_eq!(ch.x, q(3, 4));
            assert_eq!(ch.y, q(2, 3) + q_int(off as i64));
        }
    }

    #[test]
    fn router_cycles_are_valid_and_transverse() {
        let c = builders::genus2_block();
        let r = Router::new(&c, 8);
        let a_core = core_cycle(
            &c,
            CurveRef {
                family: Family::Alpha,
                index: 0,
            },
        );
        let b_core = core_cycle(
            &c,
            CurveRef {
                family: Family::Beta,
                index: 0,
            },
        );
        let pa = r.route(&a_core, 0, 0).unwrap();
        let pb = r.route(&b_core, 1, 0).unwrap();
        assert_eq!(pa.segs.len(), 8);
        assert_eq!(pb.segs.len(), 8);
        // the cores of a filling pair on one cylinder each cross 8 times
        assert_eq!(unsigned_crossings(&pa, &pb).unwrap(), 8);
    }
}
