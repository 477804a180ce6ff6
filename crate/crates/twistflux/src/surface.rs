//! Combinatorial square-tiled surfaces.
//!
//! A filling pair of multicurves on a closed oriented surface is encoded by
//! one unit square per intersection point. Each square carries an alpha frame
//! in which the alpha strand runs west to east through the middle; the flip
//! bit records whether the beta strand crosses upward (+) or downward (-) in
//! that frame. Squares are glued east-to-west along each alpha cycle and
//! exit-to-entry along each beta cycle, where the exit side is north for
//! flip + and south for flip -.

use crate::error::{Error, Result};
use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

pub type SquareId = usize;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub enum Family {
    Alpha,
    Beta,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Alpha => "alpha",
            Family::Beta => "beta",
        }
    }
}

/// Reference to one component of a multicurve (one cylinder core).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct CurveRef {
    pub family: Family,
    pub index: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Side {
    North,
    South,
    East,
    West,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Corner {
    NE,
    NW,
    SW,
    SE,
}

/// A complementary region of the curve pair, listed as the cyclic orbit of
/// square corners meeting at the corresponding cone point. A face with
/// half-size n is a 2n-gon of the curve complement.
#[derive(Clone, Debug)]
pub struct Face {
    pub corners: Vec<(SquareId, Corner)>,
    pub half_size: usize,
}

/// One annular chart: the squares crossed by a curve component, in order.
#[derive(Clone, Debug)]
pub struct Cylinder {
    pub curve: CurveRef,
    pub name: String,
    pub width: usize,
    pub squares: Vec<SquareId>,
}

impl Cylinder {
    /// Chart offset of a square, i.e. its position along the core.
    pub fn offset_of(&self, s: SquareId) -> Option<usize> {
        self.squares.iter().position(|&t| t == s)
    }
}

#[derive(Clone, Debug)]
pub struct SquareComplex {
    n: usize,
    alpha: Vec<(String, Vec<SquareId>)>,
    beta: Vec<(String, Vec<SquareId>)>,
    flips: Vec<i8>,
    // derived on validation
    alpha_pos: Vec<(usize, usize)>,
    beta_pos: Vec<(usize, usize)>,
    faces: Vec<Face>,
    genus: usize,
}

impl SquareComplex {
    pub fn new(
        alpha: Vec<(String, Vec<SquareId>)>,
        beta: Vec<(String, Vec<SquareId>)>,
        flips: Vec<i8>,
    ) -> Result<Self> {
        let n = flips.len();
        if n == 0 {
            return Err(Error::NonFilling {
                msg: "complex has no squares".into(),
            });
        }
        for f in &flips {
            if *f != 1 && *f != -1 {
                return Err(Error::BadFlip {
                    msg: format!("flip value {f} is not +1 or -1"),
                });
            }
        }
        let alpha_pos = cycle_positions(n, &alpha, "alpha")?;
        let beta_pos = cycle_positions(n, &beta, "beta")?;
        let mut c = SquareComplex {
            n,
            alpha,
            beta,
            flips,
            alpha_pos,
            beta_pos,
            faces: Vec::new(),
            genus: 0,
        };
        c.check_connected()?;
        c.faces = c.walk_faces()?;
        let f = c.faces.len() as i64;
        let chi = f - n as i64;
        if chi % 2 != 0 || chi > 0 {
            return Err(Error::Internal {
                msg: format!("Euler characteristic {chi} is not an even nonpositive integer"),
            });
        }
        c.genus = ((2 - chi) / 2) as usize;
        Ok(c)
    }

    pub fn n_squares(&self) -> usize {
        self.n
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn flip(&self, s: SquareId) -> i8 {
        self.flips[s]
    }

    pub fn alpha_cycles(&self) -> &[(String, Vec<SquareId>)] {
        &self.alpha
    }

    pub fn beta_cycles(&self) -> &[(String, Vec<SquareId>)] {
        &self.beta
    }

    fn cycles(&self, family: Family) -> &[(String, Vec<SquareId>)] {
        match family {
            Family::Alpha => &self.alpha,
            Family::Beta => &self.beta,
        }
    }

    pub fn cylinders(&self) -> Vec<Cylinder> {
        let mut out = Vec::new();
        for family in [Family::Alpha, Family::Beta] {
            for (i, (name, cyc)) in self.cycles(family).iter().enumerate() {
                out.push(Cylinder {
                    curve: CurveRef { family, index: i },
                    name: name.clone(),
                    width: cyc.len(),
                    squares: cyc.clone(),
                });
            }
        }
        out
    }

    pub fn cylinder(&self, curve: CurveRef) -> Cylinder {
        let (name, cyc) = &self.cycles(curve.family)[curve.index];
        Cylinder {
            curve,
            name: name.clone(),
            width: cyc.len(),
            squares: cyc.clone(),
        }
    }

    pub fn curve_by_name(&self, name: &str) -> Result<CurveRef> {
        for family in [Family::Alpha, Family::Beta] {
            for (i, (n, _)) in self.cycles(family).iter().enumerate() {
                if n == name {
                    return Ok(CurveRef { family, index: i });
                }
            }
        }
        Err(Error::UnknownCurve { name: name.into() })
    }

    pub fn curve_name(&self, curve: CurveRef) -> &str {
        &self.cycles(curve.family)[curve.index].0
    }

    /// (cylinder index, offset) of a square within its family.
    pub fn position(&self, family: Family, s: SquareId) -> (usize, usize) {
        match family {
            Family::Alpha => self.alpha_pos[s],
            Family::Beta => self.beta_pos[s],
        }
    }

    pub fn next_alpha(&self, s: SquareId) -> SquareId {
        let (c, p) = self.alpha_pos[s];
        let cyc = &self.alpha[c].1;
        cyc[(p + 1) % cyc.len()]
    }

    pub fn prev_alpha(&self, s: SquareId) -> SquareId {
        let (c, p) = self.alpha_pos[s];
        let cyc = &self.alpha[c].1;
        cyc[(p + cyc.len() - 1) % cyc.len()]
    }

    pub fn next_beta(&self, s: SquareId) -> SquareId {
        let (c, p) = self.beta_pos[s];
        let cyc = &self.beta[c].1;
        cyc[(p + 1) % cyc.len()]
    }

    pub fn prev_beta(&self, s: SquareId) -> SquareId {
        let (c, p) = self.beta_pos[s];
        let cyc = &self.beta[c].1;
        cyc[(p + cyc.len() - 1) % cyc.len()]
    }

    /// Side through which the beta strand leaves square `s`.
    pub fn beta_exit_side(&self, s: SquareId) -> Side {
        if self.flips[s] > 0 {
            Side::North
        } else {
            Side::South
        }
    }

    /// Side through which the beta strand enters square `s`.
    pub fn beta_entry_side(&self, s: SquareId) -> Side {
        if self.flips[s] > 0 {
            Side::South
        } else {
            Side::North
        }
    }

    /// The side glued to `(s, side)`, together with the parameter map:
    /// `reversed = false` glues parameter p to p, `true` glues p to 1-p.
    /// Side parameters run with ascending x on N/S and ascending y on E/W.
    pub fn glued_side(&self, s: SquareId, side: Side) -> (SquareId, Side, bool) {
        match side {
            Side::East => (self.next_alpha(s), Side::West, false),
            Side::West => (self.prev_alpha(s), Side::East, false),
            Side::North | Side::South => {
                let (t, along) = if side == self.beta_exit_side(s) {
                    (self.next_beta(s), true)
                } else {
                    (self.prev_beta(s), false)
                };
                let t_side = if along {
                    self.beta_entry_side(t)
                } else {
                    self.beta_exit_side(t)
                };
                let reversed = self.flips[s] != self.flips[t];
                (t, t_side, reversed)
            }
        }
    }

    fn check_connected(&self) -> Result<()> {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::new();
        queue.push_back(0);
        seen[0] = true;
        let mut count = 1;
        while let Some(s) = queue.pop_front() {
            for t in [
                self.next_alpha(s),
                self.prev_alpha(s),
                self.next_beta(s),
                self.prev_beta(s),
            ] {
                if !seen[t] {
                    seen[t] = true;
                    count += 1;
                    queue.push_back(t);
                }
            }
        }
        if count != self.n {
            return Err(Error::Disconnected);
        }
        Ok(())
    }

    /// Orbit of a corner under the face walk: cross the side counterclockwise
    /// of the corner, land at the glued corner. Orbits enumerate the corners
    /// around each cone point.
    fn next_corner(&self, s: SquareId, corner: Corner) -> (SquareId, Corner) {
        let (side, param) = match corner {
            Corner::NE => (Side::North, true),
            Corner::NW => (Side::West, true),
            Corner::SW => (Side::South, false),
            Corner::SE => (Side::East, false),
        };
        let (t, t_side, reversed) = self.glued_side(s, side);
        let p = if reversed { !param } else { param };
        let c = corner_on_side(t_side, p);
        (t, c)
    }

    fn walk_faces(&self) -> Result<Vec<Face>> {
        let corners = [Corner::SW, Corner::SE, Corner::NW, Corner::NE];
        let idx = |s: SquareId, c: Corner| -> usize {
            s * 4
                + match c {
                    Corner::SW => 0,
                    Corner::SE => 1,
                    Corner::NW => 2,
                    Corner::NE => 3,
                }
        };
        let mut seen = vec![false; 4 * self.n];
        let mut faces = Vec::new();
        for s in 0..self.n {
            for &c0 in &corners {
                if seen[idx(s, c0)] {
                    continue;
                }
                let mut orbit = Vec::new();
                let (mut cs, mut cc) = (s, c0);
                loop {
                    if seen[idx(cs, cc)] {
                        return Err(Error::Internal {
                            msg: "corner walk is not a permutation".into(),
                        });
                    }
                    seen[idx(cs, cc)] = true;
                    orbit.push((cs, cc));
                    let (ns, nc) = self.next_corner(cs, cc);
                    if ns == s && nc == c0 {
                        break;
                    }
                    cs = ns;
                    cc = nc;
                }
                if orbit.len() % 2 != 0 {
                    return Err(Error::Internal {
                        msg: "odd corner orbit".into(),
                    });
                }
                let half = orbit.len() / 2;
                if half < 2 {
                    return Err(Error::NonFilling {
                        msg: format!(
                            "bigon face at square {} corner {:?} (curves not in minimal filling position)",
                            orbit[0].0, orbit[0].1
                        ),
                    });
                }
                faces.push(Face {
                    corners: orbit,
                    half_size: half,
                });
            }
        }
        Ok(faces)
    }

    /// Number of connected components after cutting along the given cylinder
    /// cores. The listed curves must pairwise share no square.
    pub fn cut_components(&self, cores: &[CurveRef]) -> Result<usize> {
        Ok(self.cut_partition(cores)?.len())
    }

    /// Areas of the components after cutting, in half-square units (an uncut
    /// square counts 2, a cut square contributes 1 per half), sorted.
    pub fn cut_component_areas(&self, cores: &[CurveRef]) -> Result<Vec<u64>> {
        let mut areas: Vec<u64> = self
            .cut_partition(cores)?
            .iter()
            .map(|group| {
                group
                    .iter()
                    .map(|&(_, halved)| if halved { 1 } else { 2 })
                    .sum()
            })
            .collect();
        areas.sort_unstable();
        Ok(areas)
    }

    /// Components of the complement of the given cores, as groups of
    /// (square, is-half-square) pieces.
    fn cut_partition(&self, cores: &[CurveRef]) -> Result<Vec<Vec<(SquareId, bool)>>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Cut {
            No,
            Horizontal, // alpha core: square split into lower/upper halves
            Vertical,   // beta core: square split into chart-left/right halves
        }
        let mut cut = vec![Cut::No; self.n];
        for cr in cores {
            let cyl = self.cylinder(*cr);
            let kind = match cr.family {
                Family::Alpha => Cut::Horizontal,
                Family::Beta => Cut::Vertical,
            };
            for &s in &cyl.squares {
                if cut[s] != Cut::No {
                    return Err(Error::Internal {
                        msg: format!("cut curves share square {s}"),
                    });
                }
                cut[s] = kind;
            }
        }
        // Node layout: 2*s is the whole square (or its first half), 2*s+1 the
        // second half. Halves: horizontal cut 0 = lower, 1 = upper; vertical
        // cut 0 = chart-left, 1 = chart-right.
        let mut uf = UnionFind::new(2 * self.n);
        // Half of square `s` adjacent to `side`, approached from inside.
        let part = |s: SquareId, side: Side| -> usize {
            match cut[s] {
                Cut::No => 2 * s,
                Cut::Horizontal => match side {
                    Side::North => 2 * s + 1,
                    Side::South => 2 * s,
                    // east/west sides meet both halves; callers below never
                    // ask for them on a horizontally cut square in a mixing
                    // way because alpha gluings respect the halves.
                    Side::East | Side::West => unreachable!(),
                },
                Cut::Vertical => {
                    // chart-left is frame-west for flip +, frame-east for flip -
                    let left_is_west = self.flips[s] > 0;
                    match side {
                        Side::West => 2 * s + if left_is_west { 0 } else { 1 },
                        Side::East => 2 * s + if left_is_west { 1 } else { 0 },
                        Side::North | Side::South => unreachable!(),
                    }
                }
            }
        };
        for s in 0..self.n {
            // alpha gluing E(s) ~ W(next)
            let t = self.next_alpha(s);
            match (cut[s], cut[t]) {
                (Cut::Horizontal, Cut::Horizontal) => {
                    uf.union(2 * s, 2 * t);
                    uf.union(2 * s + 1, 2 * t + 1);
                }
                (Cut::Horizontal, _) | (_, Cut::Horizontal) => {
                    return Err(Error::Internal {
                        msg: "alpha gluing mixes cut and uncut squares of one cylinder".into(),
                    })
                }
                _ => {
                    uf.union(part(s, Side::East), part(t, Side::West));
                }
            }
            // beta gluing exit(s) ~ entry(next)
            let t = self.next_beta(s);
            match (cut[s], cut[t]) {
                (Cut::Vertical, Cut::Vertical) => {
                    uf.union(2 * s, 2 * t);
                    uf.union(2 * s + 1, 2 * t + 1);
                }
                (Cut::Vertical, _) | (_, Cut::Vertical) => {
                    return Err(Error::Internal {
                        msg: "beta gluing mixes cut and uncut squares of one cylinder".into(),
                    })
                }
                _ => {
                    let es = self.beta_exit_side(s);
                    let et = self.beta_entry_side(t);
                    uf.union(part(s, es), part(t, et));
                }
            }
        }
        let mut groups: HashMap<usize, Vec<(SquareId, bool)>> = HashMap::new();
        for s in 0..self.n {
            let halved = cut[s] != Cut::No;
            groups.entry(uf.find(2 * s)).or_default().push((s, halved));
            if halved {
                groups
                    .entry(uf.find(2 * s + 1))
                    .or_default()
                    .push((s, true));
            }
        }
        let mut keys: Vec<usize> = groups.keys().copied().collect();
        keys.sort_unstable();
        Ok(keys.into_iter().map(|k| groups.remove(&k).unwrap()).collect())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut alpha: Vec<(String, Vec<SquareId>)> = Vec::new();
        let mut beta: Vec<(String, Vec<SquareId>)> = Vec::new();
        let mut flips: Option<Vec<i8>> = None;
        #[derive(PartialEq)]
        enum Sect {
            Head,
            Alpha,
            Beta,
        }
        let mut sect = Sect::Head;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            };
            let body = body.trim();
            if body.is_empty() {
                continue;
            }
            if let Some(rest) = body.strip_prefix("squares:") {
                n = Some(rest.trim().parse().map_err(|_| Error::Syntax {
                    line,
                    msg: format!("bad square count `{}`", rest.trim()),
                })?);
            } else if body == "alpha:" {
                sect = Sect::Alpha;
            } else if body == "beta:" {
                sect = Sect::Beta;
            } else if let Some(rest) = body.strip_prefix("flips:") {
                let inner = bracket_body(rest.trim(), line)?;
                let mut v = Vec::new();
                for tok in inner.split(',') {
                    match tok.trim() {
                        "+" => v.push(1),
                        "-" => v.push(-1),
                        other => {
                            return Err(Error::BadFlip {
                                msg: format!("line {line}: `{other}` is not + or -"),
                            })
                        }
                    }
                }
                flips = Some(v);
            } else if let Some(colon) = body.find(':') {
                let name = body[..colon].trim().to_string();
                let inner = bracket_body(body[colon + 1..].trim(), line)?;
                let mut ids = Vec::new();
                for tok in inner.split(',') {
                    let id: usize = tok.trim().parse().map_err(|_| Error::Syntax {
                        line,
                        msg: format!("bad square id `{}`", tok.trim()),
                    })?;
                    ids.push(id);
                }
                match sect {
                    Sect::Alpha => alpha.push((name, ids)),
                    Sect::Beta => beta.push((name, ids)),
                    Sect::Head => {
                        return Err(Error::Syntax {
                            line,
                            msg: "curve line before alpha:/beta: header".into(),
                        })
                    }
                }
            } else {
                return Err(Error::Syntax {
                    line,
                    msg: format!("cannot parse `{body}`"),
                });
            }
        }
        let n = n.ok_or(Error::Syntax {
            line: 0,
            msg: "missing `squares:` line".into(),
        })?;
        let flips = flips.ok_or(Error::Syntax {
            line: 0,
            msg: "missing `flips:` line".into(),
        })?;
        if flips.len() != n {
            return Err(Error::BadFlip {
                msg: format!("expected {n} flips, found {}", flips.len()),
            });
        }
        SquareComplex::new(alpha, beta, flips)
    }

    pub fn to_file_string(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "squares: {}", self.n);
        let _ = writeln!(s, "alpha:");
        for (name, cyc) in &self.alpha {
            let _ = writeln!(s, "{}: [{}]", name, join_ids(cyc));
        }
        let _ = writeln!(s, "beta:");
        for (name, cyc) in &self.beta {
            let _ = writeln!(s, "{}: [{}]", name, join_ids(cyc));
        }
        let signs: Vec<&str> = self
            .flips
            .iter()
            .map(|&f| if f > 0 { "+" } else { "-" })
            .collect();
        let _ = writeln!(s, "flips: [{}]", signs.join(", "));
        s
    }
}

fn join_ids(ids: &[usize]) -> String {
    ids.iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn bracket_body<'a>(s: &'a str, line: usize) -> Result<&'a str> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        if inner.trim().is_empty() {
            return Err(Error::Syntax {
                line,
                msg: "empty list".into(),
            });
        }
        Ok(inner)
    } else {
        Err(Error::Syntax {
            line,
            msg: format!("expected [..] list, found `{s}`"),
        })
    }
}

fn corner_on_side(side: Side, high: bool) -> Corner {
    match (side, high) {
        (Side::North, false) => Corner::NW,
        (Side::North, true) => Corner::NE,
        (Side::South, false) => Corner::SW,
        (Side::South, true) => Corner::SE,
        (Side::East, false) => Corner::SE,
        (Side::East, true) => Corner::NE,
        (Side::West, false) => Corner::SW,
        (Side::West, true) => Corner::NW,
    }
}

fn cycle_positions(
    n: usize,
    cycles: &[(String, Vec<SquareId>)],
    family: &'static str,
) -> Result<Vec<(usize, usize)>> {
    let mut pos: Vec<Option<(usize, usize)>> = vec![None; n];
    for (ci, (_, cyc)) in cycles.iter().enumerate() {
        if cyc.is_empty() {
            return Err(Error::NonFilling {
                msg: format!("empty {family} cycle"),
            });
        }
        for (pi, &s) in cyc.iter().enumerate() {
            if s >= n {
                return Err(Error::Syntax {
                    line: 0,
                    msg: format!("square id {s} out of range 0..{n} in {family} cycles"),
                });
            }
            if pos[s].is_some() {
                return Err(Error::DuplicateSquare { square: s, family });
            }
            pos[s] = Some((ci, pi));
        }
    }
    let mut out = Vec::with_capacity(n);
    for (s, p) in pos.into_iter().enumerate() {
        match p {
            Some(p) => out.push(p),
            None => return Err(Error::MissingSquare { square: s, family }),
        }
    }
    Ok(out)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders;

    #[test]
    fn torus_is_valid() {
        let c = builders::torus();
        assert_eq!(c.n_squares(), 1);
        assert_eq!(c.genus(), 1);
        assert_eq!(c.faces().len(), 1);
        assert_eq!(c.faces()[0].half_size, 2);
        let widths: Vec<usize> = c.cylinders().iter().map(|cy| cy.width).collect();
        assert_eq!(widths, vec![1, 1]);
    }

    #[test]
    fn torus_round_trip() {
        let c = builders::torus();
        let text = c.to_file_string();
        let c2 = SquareComplex::parse(&text).unwrap();
        assert_eq!(c2.to_file_string(), text);
    }

    #[test]
    fn missing_square_is_rejected() {
        let text = "squares: 2\nalpha:\na1: [0, 1]\nbeta:\nb1: [0]\nflips: [+, +]\n";
        match SquareComplex::parse(text) {
            Err(Error::MissingSquare { square: 1, .. }) => {}
            other => panic!("expected MissingSquare, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_square_is_rejected() {
        let text = "squares: 2\nalpha:\na1: [0, 1]\nbeta:\nb1: [0, 0]\nflips: [+, +]\n";
        match SquareComplex::parse(text) {
            Err(Error::DuplicateSquare { square: 0, .. }) => {}
            other => panic!("expected DuplicateSquare, got {other:?}"),
        }
    }

    #[test]
    fn bad_flip_is_rejected() {
        let text = "squares: 1\nalpha:\na1: [0]\nbeta:\nb1: [0]\nflips: [x]\n";
        match SquareComplex::parse(text) {
            Err(Error::BadFlip { .. }) => {}
            other => panic!("expected BadFlip, got {other:?}"),
        }
    }

    #[test]
    fn side_gluings_are_involutive() {
        for c in [builders::torus(), builders::genus2_block()] {
            for s in 0..c.n_squares() {
                for side in [Side::North, Side::South, Side::East, Side::West] {
                    let (t, t_side, rev) = c.glued_side(s, side);
                    let (s2, side2, rev2) = c.glued_side(t, t_side);
                    assert_eq!((s2, side2, rev2), (s, side, rev));
                }
            }
        }
    }

    #[test]
    fn corner_conservation() {
        let c = builders::genus2_block();
        let total: usize = c.faces().iter().map(|f| 2 * f.half_size).sum();
        assert_eq!(total, 4 * c.n_squares());
    }
}
