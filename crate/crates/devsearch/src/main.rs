// Exhaustive search for the canonical genus-2 building block:
// one alpha cycle (0..7), one beta cycle, flips, such that the complex is a
// valid filling pair on a genus-2 surface with faces {8-gon x2, 4-gon x4}
// and both cores separating.

const N: usize = 8;

#[derive(Clone, Copy)]
struct Table {
    nb: [usize; N],
    pb: [usize; N],
    // bit set = flip -1
    flips: u8,
}

impl Table {
    fn flip(&self, s: usize) -> bool {
        self.flips & (1 << s) != 0 // true = -1
    }
    fn exit_north(&self, s: usize) -> bool {
        !self.flip(s)
    }
}

// sides: 0=N 1=S 2=E 3=W ; corners: 0=SW 1=SE 2=NW 3=NE
fn corner_on_side(side: u8, high: bool) -> u8 {
    match (side, high) {
        (0, false) => 2,
        (0, true) => 3,
        (1, false) => 0,
        (1, true) => 1,
        (2, false) => 1,
        (2, true) => 3,
        (3, false) => 0,
        (3, true) => 2,
        _ => unreachable!(),
    }
}

fn glued_side(t: &Table, s: usize, side: u8) -> (usize, u8, bool) {
    match side {
        2 => ((s + 1) % N, 3, false),
        3 => ((s + N - 1) % N, 2, false),
        0 | 1 => {
            let exit = if t.exit_north(s) { 0 } else { 1 };
            let (other, along) = if side == exit {
                (t.nb[s], true)
            } else {
                (t.pb[s], false)
            };
            let oside = if along {
                if t.exit_north(other) {
                    1
                } else {
                    0
                }
            } else if t.exit_north(other) {
                0
            } else {
                1
            };
            let rev = t.flip(s) != t.flip(other);
            (other, oside, rev)
        }
        _ => unreachable!(),
    }
}

fn next_corner(t: &Table, s: usize, c: u8) -> (usize, u8) {
    let (side, high) = match c {
        3 => (0u8, true),
        2 => (3u8, true),
        0 => (1u8, false),
        1 => (2u8, false),
        _ => unreachable!(),
    };
    let (os, oside, rev) = glued_side(t, s, side);
    let h = if rev { !high } else { high };
    (os, corner_on_side(oside, h))
}

// returns sorted face half-sizes if the walk is clean, else None
fn faces_ok(t: &Table) -> Option<[usize; 6]> {
    let mut seen = [false; 4 * N];
    let mut sizes = [0usize; 6];
    let mut nf = 0;
    for start in 0..4 * N {
        if seen[start] {
            continue;
        }
        let (mut s, mut c) = (start / 4, (start % 4) as u8);
        let mut len = 0usize;
        loop {
            let idx = s * 4 + c as usize;
            if seen[idx] {
                return None;
            }
            seen[idx] = true;
            len += 1;
            let (ns, ncr) = next_corner(t, s, c);
            if ns * 4 + ncr as usize == start {
                break;
            }
            s = ns;
            c = ncr;
        }
        if len % 2 != 0 || len < 8 {
            // faces must be 2n-gons with n >= 2; here the smallest allowed
            // orbit is 4 corners, and we additionally want only 4- and 8-gons
            if len < 4 || len % 2 != 0 {
                return None;
            }
        }
        if nf == 6 {
            return None;
        }
        sizes[nf] = len / 2;
        nf += 1;
    }
    if nf != 6 {
        return None;
    }
    sizes.sort_unstable();
    Some(sizes)
}

struct Uf {
    p: [usize; 2 * N],
}
impl Uf {
    fn new() -> Self {
        let mut p = [0; 2 * N];
        for (i, v) in p.iter_mut().enumerate() {
            *v = i;
        }
        Uf { p }
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.p[x] != x {
            self.p[x] = self.p[self.p[x]];
            x = self.p[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.p[ra] = rb;
        }
    }
    fn count(&mut self) -> usize {
        let mut n = 0;
        for i in 0..2 * N {
            if self.find(i) == i {
                n += 1;
            }
        }
        n
    }
}

// cut along the alpha core: 2s=bottom, 2s+1=top
fn alpha_separating(t: &Table) -> bool {
    let mut uf = Uf::new();
    for s in 0..N {
        let nx = (s + 1) % N;
        uf.union(2 * s, 2 * nx);
        uf.union(2 * s + 1, 2 * nx + 1);
        let tb = t.nb[s];
        let exit_half = if t.exit_north(s) { 2 * s + 1 } else { 2 * s };
        let entry_half = if t.exit_north(tb) { 2 * tb } else { 2 * tb + 1 };
        uf.union(exit_half, entry_half);
    }
    uf.count() == 2
}

// cut along the beta core: 2s=chart-left, 2s+1=chart-right
fn beta_separating(t: &Table) -> bool {
    let mut uf = Uf::new();
    for s in 0..N {
        let tb = t.nb[s];
        uf.union(2 * s, 2 * tb);
        uf.union(2 * s + 1, 2 * tb + 1);
        let nx = (s + 1) % N;
        // E side of s: chart-right if flip +, chart-left if flip -
        let e_half = if t.flip(s) { 2 * s } else { 2 * s + 1 };
        let w_half = if t.flip(nx) { 2 * nx + 1 } else { 2 * nx };
        uf.union(e_half, w_half);
    }
    uf.count() == 2
}

fn main() {
    let mut perm = [0usize; 7];
    let mut found = 0;
    let mut first: Option<([usize; N], u8)> = None;
    permute(&mut perm, &mut |p| {
        let mut beta = [0usize; N];
        for i in 0..7 {
            beta[i + 1] = p[i];
        }
        let mut nb = [0usize; N];
        let mut pb = [0usize; N];
        for i in 0..N {
            nb[beta[i]] = beta[(i + 1) % N];
            pb[beta[(i + 1) % N]] = beta[i];
        }
        for flips in 0u16..256 {
            let t = Table {
                nb,
                pb,
                flips: flips as u8,
            };
            if let Some(sizes) = faces_ok(&t) {
                if sizes == [2, 2, 2, 2, 4, 4] && alpha_separating(&t) && beta_separating(&t) {
                    found += 1;
                    if first.is_none() {
                        first = Some((beta, flips as u8));
                        println!("first: beta={beta:?} flips={flips:#010b}");
                    }
                }
            }
        }
    });
    println!("total solutions: {found}");
    if let Some((beta, flips)) = first {
        let signs: Vec<&str> = (0..N)
            .map(|s| if flips & (1 << s) != 0 { "-" } else { "+" })
            .collect();
        println!("canonical beta cycle: {beta:?}");
        println!("canonical flips: [{}]", signs.join(", "));
    }
}

// lexicographic permutations of [1..=7]
fn permute(out: &mut [usize; 7], f: &mut impl FnMut(&[usize; 7])) {
    let mut items: Vec<usize> = (1..=7).collect();
    fn rec(
        items: &mut Vec<usize>,
        out: &mut [usize; 7],
        depth: usize,
        f: &mut impl FnMut(&[usize; 7]),
    ) {
        if depth == 7 {
            f(out);
            return;
        }
        for i in 0..items.len() {
            let v = items.remove(i);
            out[depth] = v;
            rec(items, out, depth + 1, f);
            items.insert(i, v);
        }
    }
    rec(&mut items, out, 0, f);
}
