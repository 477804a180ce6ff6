//! Integral homology via intersection pairings.
//!
//! The strand arcs of the curve pair form a 4-valent graph whose cycles
//! generate first homology, because the complementary regions are disks. A
//! spanning tree yields N+1 fundamental cycles; pairing everything against
//! everything gives an integer skew matrix whose row lattice is a copy of
//! H_1, extracted by Hermite normal form. Classes of arbitrary polylines are
//! pairing vectors solved against that basis.

use crate::curves::{
    crossing_number, standard_capacity, unsigned_crossings, GraphCycle, GraphStep, Polyline,
    Router,
};
use crate::error::{Error, Result};
use crate::surface::{CurveRef, Family, SquareComplex, SquareId};
use crate::twists::TwistWord;
use num::integer::Integer;
use num::{BigInt, One, Signed, Zero};

pub type ZMat = Vec<Vec<BigInt>>;

pub fn zmat_identity(n: usize) -> ZMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn zmat_mul(a: &ZMat, b: &ZMat) -> ZMat {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let mut out = vec![vec![BigInt::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                let t = &a[i][l] * &b[l][j];
                out[i][j] += t;
            }
        }
    }
    out
}

pub fn zmat_transpose(a: &ZMat) -> ZMat {
    let n = a.len();
    let m = a[0].len();
    (0..m)
        .map(|j| (0..n).map(|i| a[i][j].clone()).collect())
        .collect()
}

pub fn zmat_sub(a: &ZMat, b: &ZMat) -> ZMat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x - y).collect())
        .collect()
}

pub fn zmat_eq_identity(a: &ZMat) -> bool {
    a.iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
    })
}

/// Bareiss fraction-free determinant.
pub fn zmat_det(a: &ZMat) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = t / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Row Hermite normal form with transform: returns (h, u, rank) where
/// u * a = h, u unimodular, and the first `rank` rows of h are the echelon
/// basis of the row lattice of `a`.
pub fn hnf_rows(a: &ZMat) -> (ZMat, ZMat, usize) {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut h = a.clone();
    let mut u = zmat_identity(rows);
    let mut pr = 0usize;
    for col in 0..cols {
        if pr >= rows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for r in pr..rows {
                if !h[r][col].is_zero() {
                    let better = match best {
                        None => true,
                        Some(b) => h[r][col].abs() < h[b][col].abs(),
                    };
                    if better {
                        best = Some(r);
                    }
                }
            }
            let Some(b) = best else { break };
            h.swap(pr, b);
            u.swap(pr, b);
            let piv = h[pr][col].clone();
            let mut all_zero = true;
            for r in pr + 1..rows {
                if !h[r][col].is_zero() {
                    let q = h[r][col].div_floor(&piv);
                    if !q.is_zero() {
                        for j in 0..cols {
                            let t = &h[pr][j] * &q;
                            h[r][j] -= t;
                        }
                        for j in 0..rows {
                            let t = &u[pr][j] * &q;
                            u[r][j] -= t;
                        }
                    }
                    if !h[r][col].is_zero() {
                        all_zero = false;
                    }
                }
            }
            if all_zero {
                break;
            }
        }
        if !h[pr][col].is_zero() {
            if h[pr][col].is_negative() {
                for j in 0..cols {
                    h[pr][j] = -h[pr][j].clone();
                }
                for j in 0..rows {
                    u[pr][j] = -u[pr][j].clone();
                }
            }
            let piv = h[pr][col].clone();
            for r in 0..pr {
                let q = h[r][col].div_floor(&piv);
                if !q.is_zero() {
                    for j in 0..cols {
                        let t = &h[pr][j] * &q;
                        h[r][j] -= t;
                    }
                    for j in 0..rows {
                        let t = &u[pr][j] * &q;
                        u[r][j] -= t;
                    }
                }
            }
            pr += 1;
        }
    }
    (h, u, pr)
}

/// Solve x * b = v for integer x, where b is a row-echelon lattice basis.
pub fn solve_in_basis(b: &ZMat, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let rank = b.len();
    let cols = v.len();
    let mut residual = v.to_vec();
    let mut x = vec![BigInt::zero(); rank];
    for i in 0..rank {
        let piv_col = (0..cols).find(|&j| !b[i][j].is_zero())?;
        let (q, r) = residual[piv_col].div_rem(&b[i][piv_col]);
        if !r.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for j in 0..cols {
                let t = &b[i][j] * &q;
                residual[j] -= t;
            }
        }
        x[i] = q;
    }
    if residual.iter().all(|r| r.is_zero()) {
        Some(x)
    } else {
        None
    }
}

/// Saturated basis of the integer kernel {x : a x = 0}, as columns.
pub fn kernel_basis(a: &ZMat) -> Vec<Vec<BigInt>> {
    let at = zmat_transpose(a);
    let (h, u, _) = hnf_rows(&at);
    let mut out = Vec::new();
    for (row_h, row_u) in h.iter().zip(u.iter()) {
        if row_h.iter().all(|x| x.is_zero()) {
            out.push(row_u.clone());
        }
    }
    out
}

const MAX_RETRY: u32 = 5;

/// Homology coordinate system built from a spanning tree of the strand
/// graph.
pub struct HomologyFrame {
    pub rank: usize,
    pub cycles: Vec<GraphCycle>,
    pub polylines: Vec<Polyline>,
    /// skew pairing of the spanning cycles
    pub pairing: ZMat,
    /// echelon basis of the pairing-vector lattice (rank x (N+1))
    pub basis: ZMat,
    /// basis = transform * pairing (rank x (N+1))
    pub transform: ZMat,
    /// intersection form on the basis classes (rank x rank, skew, unimodular)
    pub gram: ZMat,
    pub core_classes: Vec<(CurveRef, Vec<BigInt>)>,
    router_capacity: usize,
    router_denom: Option<i64>,
}

impl HomologyFrame {
    fn router<'a>(&self, c: &'a SquareComplex) -> Router<'a> {
        match self.router_denom {
            Some(d) => Router::with_denominator(c, self.router_capacity, d),
            None => Router::new(c, self.router_capacity),
        }
    }

    pub fn core_class(&self, curve: CurveRef) -> &[BigInt] {
        &self
            .core_classes
            .iter()
            .find(|(cr, _)| *cr == curve)
            .expect("every cylinder has a cached core class")
            .1
    }

    /// Fresh polyline representative of the j-th spanning cycle.
    pub fn reroute_cycle(
        &self,
        c: &SquareComplex,
        j: usize,
        slot: usize,
        retry: u32,
    ) -> Result<Polyline> {
        self.router(c).route(&self.cycles[j], slot, retry)
    }

    /// Slot of the j-th realization copy (disjoint from frame and cores).
    pub fn realization_slot(&self, c: &SquareComplex, j: usize) -> usize {
        let n = c.n_squares();
        let n_cores = self.core_classes.len();
        n + 1 + n_cores + j
    }

    /// Slot of a second, parallel realization copy of the j-th cycle.
    pub fn alt_realization_slot(&self, c: &SquareComplex, j: usize) -> usize {
        let n = c.n_squares();
        let n_cores = self.core_classes.len();
        2 * (n + 1) + n_cores + j
    }
}

/// Spanning-tree fundamental cycles of the strand graph.
pub fn fundamental_cycles(c: &SquareComplex) -> Vec<GraphCycle> {
    let n = c.n_squares();
    // tree as parent pointers over squares; edges are (kind, base)
    let mut parent: Vec<Option<GraphStep>> = vec![None; n]; // step leading from parent into this square
    let mut seen = vec![false; n];
    let mut order = Vec::new();
    seen[0] = true;
    order.push(0);
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(0usize);
    let mut tree_edges = vec![false; 2 * n]; // alpha edge s -> index s, beta edge s -> n + s
    while let Some(s) = queue.pop_front() {
        let neighbors = [
            (
                c.next_alpha(s),
                GraphStep {
                    edge: crate::curves::EdgeRef {
                        kind: Family::Alpha,
                        base: s,
                    },
                    forward: true,
                },
                s,
            ),
            (
                c.prev_alpha(s),
                GraphStep {
                    edge: crate::curves::EdgeRef {
                        kind: Family::Alpha,
                        base: c.prev_alpha(s),
                    },
                    forward: false,
                },
                c.prev_alpha(s),
            ),
            (
                c.next_beta(s),
                GraphStep {
                    edge: crate::curves::EdgeRef {
                        kind: Family::Beta,
                        base: s,
                    },
                    forward: true,
                },
                s,
            ),
            (
                c.prev_beta(s),
                GraphStep {
                    edge: crate::curves::EdgeRef {
                        kind: Family::Beta,
                        base: c.prev_beta(s),
                    },
                    forward: false,
                },
                c.prev_beta(s),
            ),
        ];
        for (t, step, base) in neighbors {
            if !seen[t] {
                seen[t] = true;
                parent[t] = Some(step);
                let idx = match step.edge.kind {
                    Family::Alpha => base,
                    Family::Beta => n + base,
                };
                tree_edges[idx] = true;
                order.push(t);
                queue.push_back(t);
            }
        }
    }
    // parent square alongside the step that led into each square
    let mut parent_sq: Vec<Option<(SquareId, GraphStep)>> = vec![None; n];
    for s in 0..n {
        if let Some(step) = parent[s] {
            let (u, v) = crate::curves::edge_endpoints(c, step.edge);
            let from = if step.forward { u } else { v };
            parent_sq[s] = Some((from, step));
        }
    }
    let up_path = |mut s: SquareId| -> Vec<GraphStep> {
        let mut steps = Vec::new();
        while let Some((from, step)) = parent_sq[s] {
            steps.push(GraphStep {
                edge: step.edge,
                forward: !step.forward,
            });
            s = from;
        }
        steps
    };

    let mut cycles = Vec::new();
    for s in 0..n {
        for (kind, idx) in [(Family::Alpha, s), (Family::Beta, n + s)] {
            if tree_edges[idx] {
                continue;
            }
            let edge = crate::curves::EdgeRef { kind, base: s };
            let (u, v) = crate::curves::edge_endpoints(c, edge);
            // cycle: edge u -> v, then tree path v -> root -> u
            let mut steps = vec![GraphStep {
                edge,
                forward: true,
            }];
            let vp = up_path(v);
            let upth = up_path(u);
            // strip the common tail (toward the root)
            let mut vi = vp.len();
            let mut ui = upth.len();
            while vi > 0 && ui > 0 {
                let a = vp[vi - 1];
                let b = upth[ui - 1];
                if a.edge == b.edge && a.forward == b.forward {
                    vi -= 1;
                    ui -= 1;
                } else {
                    break;
                }
            }
            steps.extend(vp.into_iter().take(vi));
            for st in upth.into_iter().take(ui).rev() {
                steps.push(GraphStep {
                    edge: st.edge,
                    forward: !st.forward,
                });
            }
            cycles.push(steps);
        }
    }
    cycles
}

pub fn build_frame(c: &SquareComplex) -> Result<HomologyFrame> {
    build_frame_with(c, None)
}

pub fn build_frame_with(c: &SquareComplex, denom: Option<i64>) -> Result<HomologyFrame> {
    let n = c.n_squares();
    let capacity = standard_capacity(c);
    let router = match denom {
        Some(d) => Router::with_denominator(c, capacity, d),
        None => Router::new(c, capacity),
    };
    let cycles = fundamental_cycles(c);
    if cycles.len() != n + 1 {
        return Err(Error::Internal {
            msg: format!("expected {} fundamental cycles, found {}", n + 1, cycles.len()),
        });
    }
    let mut polylines = Vec::with_capacity(cycles.len());
    for (j, cyc) in cycles.iter().enumerate() {
        polylines.push(router.route(cyc, j, 0)?);
    }
    let m = cycles.len();
    let mut pairing = vec![vec![BigInt::zero(); m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let x = crossing_number(&polylines[i], &polylines[j])?;
            pairing[i][j] = BigInt::from(x);
            pairing[j][i] = BigInt::from(-x);
        }
    }
    let (h, u, rank) = hnf_rows(&pairing);
    if rank != 2 * c.genus() {
        return Err(Error::RankMismatch {
            expected: 2 * c.genus(),
            actual: rank,
        });
    }
    let basis: ZMat = h[..rank].to_vec();
    let transform: ZMat = u[..rank].to_vec();
    let gram = {
        let put = zmat_mul(&transform, &pairing);
        zmat_mul(&put, &zmat_transpose(&transform))
    };
    let det = zmat_det(&gram);
    if !(det.clone().abs()).is_one() {
        return Err(Error::Internal {
            msg: format!("intersection form on the basis has determinant {det}"),
        });
    }
    let mut frame = HomologyFrame {
        rank,
        cycles,
        polylines,
        pairing,
        basis,
        transform,
        gram,
        core_classes: Vec::new(),
        router_capacity: capacity,
        router_denom: denom,
    };
    // cache core classes at their reserved slots
    let cylinders = c.cylinders();
    for (i, cyl) in cylinders.iter().enumerate() {
        let cyc = crate::curves::core_cycle(c, cyl.curve);
        let slot = n + 1 + i;
        let mut class = None;
        for retry in 0..MAX_RETRY {
            let poly = frame.router(c).route(&cyc, slot, retry)?;
            match class_of_polyline(c, &frame, &poly) {
                Ok(v) => {
                    class = Some(v);
                    break;
                }
                Err(Error::NotTransverse { .. }) => continue,
                Err(e) => return Err(e),
            }
        }
        let class = class.ok_or(Error::NotTransverse {
            msg: "core class did not stabilize".into(),
        })?;
        frame.core_classes.push((cyl.curve, class));
    }
    Ok(frame)
}

/// Pairing vector of a weighted 1-cycle against the spanning cycles, with
/// rerouting retries when a crossing degenerates.
fn pairing_vector(
    c: &SquareComplex,
    f: &HomologyFrame,
    parts: &[(&Polyline, i64)],
) -> Result<Vec<BigInt>> {
    let m = f.cycles.len();
    let mut v = vec![BigInt::zero(); m];
    for j in 0..m {
        let mut value: Option<i64> = None;
        for retry in 0..MAX_RETRY {
            let g;
            let gref = if retry == 0 {
                &f.polylines[j]
            } else {
                g = f.reroute_cycle(c, j, j, retry)?;
                &g
            };
            let mut total = 0i64;
            let mut ok = true;
            for (p, weight) in parts {
                match crossing_number(p, gref) {
                    Ok(x) => total += weight * x,
                    Err(Error::NotTransverse { .. }) => {
                        ok = false;
                        break;
                    }
                    Err(e) => return Err(e),
                }
            }
            if ok {
                value = Some(total);
                break;
            }
        }
        match value {
            Some(x) => v[j] = BigInt::from(x),
            None => {
                return Err(Error::NotTransverse {
                    msg: format!("pairing against spanning cycle {j} stayed degenerate"),
                })
            }
        }
    }
    Ok(v)
}

pub fn class_of_polyline(
    c: &SquareComplex,
    f: &HomologyFrame,
    p: &Polyline,
) -> Result<Vec<BigInt>> {
    class_of_parts(c, f, &[(p, 1)])
}

pub fn class_of_parts(
    c: &SquareComplex,
    f: &HomologyFrame,
    parts: &[(&Polyline, i64)],
) -> Result<Vec<BigInt>> {
    let v = pairing_vector(c, f, parts)?;
    solve_in_basis(&f.basis, &v).ok_or(Error::Internal {
        msg: "pairing vector escapes the homology lattice".into(),
    })
}

/// Intersection number of two classes in basis coordinates.
pub fn class_pairing(f: &HomologyFrame, x: &[BigInt], y: &[BigInt]) -> BigInt {
    let mut total = BigInt::zero();
    for i in 0..f.rank {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..f.rank {
            if !y[j].is_zero() {
                total += &x[i] * &f.gram[i][j] * &y[j];
            }
        }
    }
    total
}

/// Matrix of the induced homology action of a twist word on the frame basis
/// (columns transform class coordinate columns; rightmost letter first).
pub fn twist_action(f: &HomologyFrame, w: &TwistWord) -> ZMat {
    let rank = f.rank;
    let mut m = zmat_identity(rank);
    for (curve, k) in &w.letters {
        let g = f.core_class(*curve);
        // transvection x -> x + k <g, x> g
        let mut t = zmat_identity(rank);
        for i in 0..rank {
            for j in 0..rank {
                // <g, e_j> = sum_l g_l gram[l][j]
                let mut pair = BigInt::zero();
                for l in 0..rank {
                    if !g[l].is_zero() && !f.gram[l][j].is_zero() {
                        pair += &g[l] * &f.gram[l][j];
                    }
                }
                t[i][j] += BigInt::from(*k) * &g[i] * pair;
            }
        }
        m = zmat_mul(&m, &t);
    }
    m
}

/// Saturated basis of the sublattice fixed by the action matrix.
pub fn invariant_sublattice(m: &ZMat) -> Vec<Vec<BigInt>> {
    let rank = m.len();
    let diff = zmat_sub(m, &zmat_identity(rank));
    kernel_basis(&diff)
}

/// Two disjoint homologous nonzero classes form a bounding pair; the caller
/// asserts the curves are not isotopic.
pub fn is_bounding_pair(
    c: &SquareComplex,
    f: &HomologyFrame,
    p: &Polyline,
    q: &Polyline,
    distinct_isotopy_classes: bool,
) -> Result<bool> {
    if !distinct_isotopy_classes {
        return Ok(false);
    }
    let cp = class_of_polyline(c, f, p)?;
    let cq = class_of_polyline(c, f, q)?;
    if cp != cq || cp.iter().all(|x| x.is_zero()) {
        return Ok(false);
    }
    Ok(unsigned_crossings(p, q)? == 0)
}
