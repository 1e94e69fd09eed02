//! The two double-complex resolutions, the periodic resolution of `N`, and their contracting homotopies.

use std::collections::HashMap;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{EchelonBasis, Matrix};
use crate::module::{pim, FreeModule, ModuleMap};
use crate::quiver::Element;
use crate::resolution::{homotopy_h, homotopy_h_dash, Bicomplex, Bidegree, ContractingHomotopy, HomotopyDegree, Resolution};

/// The commuting squares the two double complexes are built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Square {
    A,
    B,
    C,
    D,
    E,
}

/// Square data `(R, P, S, Q; alpha: R -> P, y: R -> S, x: P -> Q, beta: S -> Q)`.
pub struct SquareData {
    pub r: &'static str,
    pub p: &'static str,
    pub s: &'static str,
    pub q: &'static str,
    pub alpha: &'static str,
    pub y: &'static str,
    pub x: &'static str,
    pub beta: &'static str,
}

impl Square {
    pub const ALL: [Square; 5] = [Square::A, Square::B, Square::C, Square::D, Square::E];

    pub fn data(self) -> SquareData {
        let (r, p, s, q, alpha, y, x, beta) = match self {
            Square::A => ("M", "K", "M", "M", "a*e*b", "d", "c", "d"),
            Square::B => ("K", "M", "M", "K", "c*a*e", "c", "b", "a*e*b"),
            Square::C => ("M", "M", "K", "M", "d", "b", "d", "c*a*e"),
            Square::D => ("N", "M", "N", "K", "c*a", "f", "b", "a"),
            Square::E => ("M", "M", "N", "M", "d", "e*b", "d", "c*a"),
        };
        SquareData { r, p, s, q, alpha, y, x, beta }
    }

    pub fn name(self) -> &'static str {
        match self {
            Square::A => "A",
            Square::B => "B",
            Square::C => "C",
            Square::D => "D",
            Square::E => "E",
        }
    }

    /// Squares with a second homotopy component when dashed.
    pub fn has_dash(self) -> bool {
        matches!(self, Square::A | Square::C | Square::D)
    }
}

/// The square whose bottom-right corner `Q` sits at a position, with its decorations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Placement {
    pub square: Square,
    pub transposed: bool,
    pub dashed: bool,
}

impl Placement {
    pub fn label(&self) -> String {
        let mut s = self.square.name().to_string();
        if self.dashed {
            s.push('\'');
        }
        if self.transposed {
            s = if self.dashed { format!("({s})^T") } else { format!("{s}^T") };
        }
        s
    }
}

/// Which of the two bicomplex resolutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bicx {
    M,
    K,
}

/// The square placed at `(r, s)`, if that position is the corner `Q` of one.
pub fn placement(kind: Bicx, r: i64, s: i64) -> Option<Placement> {
    if r < 0 || s < 0 {
        return None;
    }
    let abc = [Square::A, Square::B, Square::C];
    let plain = |sq| Some(Placement { square: sq, transposed: false, dashed: false });
    match kind {
        Bicx::M => {
            if s == r {
                Some(Placement { square: Square::A, transposed: false, dashed: true })
            } else if s > r {
                plain([Square::A, Square::B, Square::C][((s - r) % 3) as usize])
            } else if r - s == 1 {
                Some(Placement { square: Square::A, transposed: true, dashed: true })
            } else {
                let sq = abc[((r - s - 1) % 3) as usize];
                Some(Placement { square: sq, transposed: true, dashed: false })
            }
        }
        Bicx::K => {
            if r % 2 == 0 {
                let k = r / 2;
                match s - 2 * k {
                    t if t < 0 => None,
                    0 => Some(Placement { square: Square::D, transposed: false, dashed: true }),
                    1 => plain(Square::E),
                    t => plain(abc[((t - 2) % 3) as usize]),
                }
            } else {
                let k = (r - 1) / 2;
                match s - 2 * k {
                    t if t < 2 => None,
                    2 => Some(Placement { square: Square::C, transposed: false, dashed: true }),
                    t => plain(abc[((t - 3) % 3) as usize]),
                }
            }
        }
    }
}

/// Module at a position of the bicomplex, if any.
pub fn module_at(kind: Bicx, r: i64, s: i64) -> Option<&'static str> {
    if let Some(p) = placement(kind, r, s) {
        return Some(p.square.data().q);
    }
    match kind {
        Bicx::K if r >= 0 && r % 2 == 1 && (s == r - 1 || s == r) => Some("N"),
        _ => None,
    }
}

impl Bicx {
    pub fn simple(self) -> &'static str {
        match self {
            Bicx::M => "M",
            Bicx::K => "K",
        }
    }
}

fn el(alg: &Algebra, x: &str) -> Result<Element> {
    alg.quiver().parse_element(alg.field(), x)
}

fn vx(alg: &Algebra, label: &str) -> Result<usize> {
    alg.quiver().vertex(label)
}

/// Left multiplication by the path `x` as a map `P_p -> P_q`; returns `(p, q, matrix)`.
pub fn path_map(alg: &Algebra, x: &str) -> Result<(usize, usize, Matrix)> {
    let e = el(alg, x)?;
    let (s, t) = e.endpoints().ok_or_else(|| Error::Invalid(format!("`{x}` is zero")))?;
    let m = ModuleMap::from_entries(alg, pim(alg, t), pim(alg, s), &[vec![e]])?;
    Ok((t, s, m.matrix().clone()))
}

fn mat(alg: &Algebra, x: &str) -> Result<Matrix> {
    Ok(path_map(alg, x)?.2)
}

/// `h_x` for a single path `x`.
pub fn h(alg: &Algebra, x: &str) -> Result<Matrix> {
    let (p, q, _) = path_map(alg, x)?;
    homotopy_h(alg, &el(alg, x)?, p, q)
}

/// `h'_X` for one of the squares `A`, `C`, `D`.
pub fn h_dash(alg: &Algebra, sq: Square) -> Result<Matrix> {
    let d = sq.data();
    homotopy_h_dash(alg, &el(alg, d.beta)?, vx(alg, d.s)?, &el(alg, d.x)?, vx(alg, d.p)?, vx(alg, d.q)?)
}

fn put(bc: &mut Bicomplex, alg: &Algebra, from: Bidegree, to: Bidegree, x: &str) -> Result<()> {
    if !bc.modules.contains_key(&from) || !bc.modules.contains_key(&to) {
        return Ok(());
    }
    let e = el(alg, x)?;
    if from.0 == to.0 + 1 && from.1 == to.1 {
        bc.horizontal.insert(from, e);
    } else if from.1 == to.1 + 1 && from.0 == to.0 {
        bc.vertical.insert(from, e);
    } else {
        return Err(Error::ModuleMismatch(format!("({},{}) -> ({},{}) is not a bicomplex map", from.0, from.1, to.0, to.1)));
    }
    Ok(())
}

/// Positions `P` and `S` of the square with corner `Q = (r, s)`.
fn corners(p: &Placement, (r, s): Bidegree) -> (Bidegree, Bidegree) {
    if p.transposed {
        ((r + 1, s), (r, s + 1))
    } else {
        ((r, s + 1), (r + 1, s))
    }
}

/// The double complex with all positions of total degree at most `max_total`.
pub fn bicomplex(alg: &Algebra, kind: Bicx, max_total: i64) -> Result<Bicomplex> {
    let mut bc = Bicomplex::default();
    for r in 0..=max_total {
        for s in 0..=max_total - r {
            if let Some(m) = module_at(kind, r, s) {
                bc.modules.insert((r, s), vx(alg, m)?);
            }
        }
    }
    let positions: Vec<Bidegree> = bc.modules.keys().copied().collect();
    for q in positions {
        if let Some(p) = placement(kind, q.0, q.1) {
            let d = p.square.data();
            let (pp, sp) = corners(&p, q);
            put(&mut bc, alg, pp, q, d.x)?;
            put(&mut bc, alg, sp, q, d.beta)?;
        }
    }
    if kind == Bicx::K {
        let mut k = 0;
        while 4 * k < max_total {
            put(&mut bc, alg, (2 * k + 1, 2 * k + 1), (2 * k + 1, 2 * k), "f")?;
            put(&mut bc, alg, (2 * k + 1, 2 * k + 2), (2 * k + 1, 2 * k + 1), "e*b")?;
            k += 1;
        }
    }
    Ok(bc)
}

/// Positions where a square's modules or its maps out of `R` disagree with the double complex.
pub fn square_mismatches(alg: &Algebra, kind: Bicx, max_total: i64) -> Result<Vec<String>> {
    let bc = bicomplex(alg, kind, max_total + 2)?;
    let mut bad = Vec::new();
    for r in 0..=max_total {
        for s in 0..=max_total - r {
            let Some(p) = placement(kind, r, s) else { continue };
            let d = p.square.data();
            let (pp, sp) = corners(&p, (r, s));
            let rp = (r + 1, s + 1);
            let label = format!("{} at ({r},{s})", p.label());
            for (pos, m) in [((r, s), d.q), (pp, d.p), (sp, d.s), (rp, d.r)] {
                if bc.modules.get(&pos) != Some(&vx(alg, m)?) {
                    bad.push(format!("{label}: module at ({},{}) is not P_{m}", pos.0, pos.1));
                }
            }
            let (to_p, to_s) = if p.transposed { (bc.vertical.get(&rp), bc.horizontal.get(&rp)) } else { (bc.horizontal.get(&rp), bc.vertical.get(&rp)) };
            for (name, want, got) in [("alpha", d.alpha, to_p), ("y", d.y, to_s)] {
                let want = alg.normal_form(&el(alg, want)?)?;
                let got = match got {
                    Some(g) => alg.normal_form(g)?,
                    None => Element::zero(alg.field()),
                };
                if want != got {
                    bad.push(format!("{label}: {name} is {} in the complex", alg.quiver().format_element(&got)));
                }
            }
        }
    }
    Ok(bad)
}

/// The total complex of `D(L)` for `L = M, K`, through degree `max_degree`.
pub fn bicomplex_resolution(alg: &Algebra, kind: Bicx, max_degree: usize) -> Result<Resolution> {
    let bc = bicomplex(alg, kind, max_degree as i64)?;
    bc.total(alg, vx(alg, kind.simple())?, max_degree)
}

/// The periodic resolution `P_N <- P_KN <- P_KN <- P_N <- P_N <- ...` of `N`.
pub fn n_resolution(alg: &Algebra, max_degree: usize) -> Result<Resolution> {
    let (k, n) = (vx(alg, "K")?, vx(alg, "N")?);
    let shape = |i: usize| match i % 4 {
        1 | 2 => vec![k, n],
        _ => vec![n],
    };
    let terms: Vec<FreeModule> = (0..=max_degree).map(|i| FreeModule::new(alg, shape(i))).collect();
    let mut diffs = Vec::new();
    for i in 1..=max_degree {
        let rows: Vec<Vec<&str>> = match i % 4 {
            1 => vec![vec!["e", "f"]],
            2 => vec![vec!["b*c", "a"], vec!["e", "f^2"]],
            3 => vec![vec!["a"], vec!["f"]],
            _ => vec![vec!["f^4"]],
        };
        let entries = rows.iter().map(|r| r.iter().map(|x| el(alg, x)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        diffs.push(ModuleMap::from_entries(alg, terms[i].clone(), terms[i - 1].clone(), &entries)?);
    }
    Resolution::from_parts(alg, n, terms, diffs)
}

/// The blocks of the contracting homotopy, keyed by `(from, to)`, for corners of total degree at most `max_total`.
///
/// `omit_dash` drops the `h'` block of the square with that corner.
pub fn homotopy_blocks(alg: &Algebra, kind: Bicx, max_total: i64, omit_dash: Option<Bidegree>) -> Result<HashMap<(Bidegree, Bidegree), Matrix>> {
    let mut cache: HashMap<String, Matrix> = HashMap::new();
    let mut get = |key: String, make: &dyn Fn() -> Result<Matrix>| -> Result<Matrix> {
        if let Some(m) = cache.get(&key) {
            return Ok(m.clone());
        }
        let m = make()?;
        cache.insert(key, m.clone());
        Ok(m)
    };
    let mut blocks = HashMap::new();
    for r in 0..=max_total {
        for s in 0..=max_total - r {
            let Some(p) = placement(kind, r, s) else { continue };
            let d = p.square.data();
            let q = (r, s);
            let (pp, sp) = corners(&p, q);
            blocks.insert((q, pp), get(format!("h {}", d.x), &|| h(alg, d.x))?);
            if p.dashed && p.square.has_dash() && omit_dash != Some(q) {
                blocks.insert((q, sp), get(format!("h' {}", p.square.name()), &|| h_dash(alg, p.square))?);
            }
            if matches!(p.square, Square::D | Square::E) {
                blocks.insert((sp, (r + 1, s + 1)), get(format!("h {}", d.y), &|| h(alg, d.y))?);
            }
        }
    }
    Ok(blocks)
}

/// Checks `dh + hd = Id` on the total complex of `D(L)` in degrees `0..=max_degree`.
pub fn check_contracting_homotopy(alg: &Algebra, kind: Bicx, max_degree: usize, omit_dash: Option<Bidegree>) -> Result<Vec<HomotopyDegree>> {
    let res = bicomplex_resolution(alg, kind, max_degree + 1)?;
    let blocks = homotopy_blocks(alg, kind, max_degree as i64, omit_dash)?;
    let hom = ContractingHomotopy::from_blocks(alg, &res, &blocks, max_degree)?;
    hom.verify(alg, &res, max_degree)
}

/// `(path, words sent to a nonzero value, words sent to zero)` for `h_path`.
pub const H_TABLE: [(&str, &[&str], &[&str]); 5] = [
    ("b", &["b", "b*c", "b*c*a", "b*c*a*e"], &["1_K", "a", "a*e", "a*e*b"]),
    ("c", &["c", "c*a", "c*a*e", "c*a*e*b"], &["1_M", "d"]),
    ("d", &["d", "c*a*e*b"], &["1_M", "c", "c*a", "c*a*e"]),
    ("e*b", &["e*b", "e*b*c", "f^4"], &["1_N", "e", "f", "f^2", "f^3"]),
    ("f", &["f", "e*b*c", "f^2", "f^3", "f^4"], &["1_N", "e", "e*b"]),
];

/// The same for `h'_X`.
pub const H_DASH_TABLE: [(Square, &[&str], &[&str]); 3] = [
    (Square::A, &["d"], &["1_M", "c", "c*a", "c*a*e", "c*a*e*b"]),
    (Square::C, &["c*a*e"], &["1_M", "c", "d", "c*a", "c*a*e*b"]),
    (Square::D, &["a", "a*e", "a*e*b"], &["1_K", "b", "b*c", "b*c*a", "b*c*a*e"]),
];

/// Outcome of one identity among homotopy operators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identity {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

impl Identity {
    fn new(name: impl Into<String>, holds: bool, detail: impl Into<String>) -> Self {
        Identity { name: name.into(), holds, detail: detail.into() }
    }
}

fn basis_index(alg: &Algebra, v: usize, w: &str) -> Result<usize> {
    let word = alg.quiver().parse_word(w)?;
    if word.source() != v {
        return Err(Error::Invalid(format!("`{w}` does not start at {}", alg.quiver().vertex_label(v))));
    }
    alg.index_of(&word).ok_or_else(|| Error::Invalid(format!("`{w}` is not a standard monomial")))
}

/// Compares the nonzero columns of `hm: Q -> P` with a table and checks `x h(w) = w` on them.
fn table_identity(alg: &Algebra, name: String, x: &Matrix, hm: &Matrix, q: usize, nonzero: &[&str], zero: &[&str]) -> Result<Identity> {
    let dim = alg.pim_dim(q);
    let mut listed = vec![false; dim];
    let mut problems = Vec::new();
    for (ws, expect_nonzero) in [(nonzero, true), (zero, false)] {
        for w in ws.iter() {
            let i = basis_index(alg, q, w)?;
            listed[i] = true;
            let col = hm.column(i);
            let is_nonzero = col.iter().any(|&c| c != 0);
            if is_nonzero != expect_nonzero {
                problems.push(format!("{w} is sent to {}", if is_nonzero { "a nonzero value" } else { "0" }));
            } else if is_nonzero {
                let back = x.mul_vec(&col);
                let mut unit = vec![0; dim];
                unit[i] = 1;
                if back != unit {
                    problems.push(format!("{w} is not recovered by the path"));
                }
            }
        }
    }
    if listed.iter().any(|&b| !b) {
        problems.push("table does not cover the basis".into());
    }
    let detail = if problems.is_empty() { "matches".to_string() } else { problems.join("; ") };
    Ok(Identity::new(name, problems.is_empty(), detail))
}

/// The tabulated values of every `h_x` and `h'_X`.
pub fn table_identities(alg: &Algebra) -> Result<Vec<Identity>> {
    let mut out = Vec::new();
    for (x, nz, z) in H_TABLE {
        let (_, q, xm) = path_map(alg, x)?;
        out.push(table_identity(alg, format!("h_{x} table"), &xm, &h(alg, x)?, q, nz, z)?);
    }
    for (sq, nz, z) in H_DASH_TABLE {
        let d = sq.data();
        let bm = mat(alg, d.beta)?;
        out.push(table_identity(alg, format!("h'_{} table", sq.name()), &bm, &h_dash(alg, sq)?, vx(alg, d.q)?, nz, z)?);
    }
    Ok(out)
}

fn apply_word(alg: &Algebra, hm: &Matrix, q: usize, p: usize, w: &str) -> Result<String> {
    let i = basis_index(alg, q, w)?;
    let col = hm.column(i);
    Ok(alg.quiver().format_element(&alg.element(p, &col)))
}

/// Individual values `h_d(caeb) = d`, `h_c(1_M) = 0`, `h'_A(d) = 1_M`, `h'_A(cae) = 0`, `h_f(ebc) = e`.
pub fn spot_values(alg: &Algebra) -> Result<Vec<Identity>> {
    let ha = h_dash(alg, Square::A)?;
    let m = vx(alg, "M")?;
    let cases: Vec<(&str, Matrix, usize, usize, &str, &str)> = vec![
        ("h_d", h(alg, "d")?, m, m, "c*a*e*b", "d"),
        ("h_c", h(alg, "c")?, m, vx(alg, "K")?, "1_M", "0"),
        ("h'_A", ha.clone(), m, m, "d", "1_M"),
        ("h'_A", ha, m, m, "c*a*e", "0"),
        ("h_f", h(alg, "f")?, vx(alg, "N")?, vx(alg, "N")?, "e*b*c", "e"),
    ];
    cases
        .into_iter()
        .map(|(name, hm, q, p, w, want)| {
            let got = apply_word(alg, &hm, q, p, w)?;
            Ok(Identity::new(format!("{name}({w}) = {want}"), got == want, format!("computed {got}")))
        })
        .collect()
}

fn unit_diag(alg: &Algebra, dim: usize, keep: impl Fn(usize) -> bool) -> Matrix {
    let mut m = Matrix::zeros(alg.field(), dim, dim);
    for i in 0..dim {
        if keep(i) {
            m.set(i, i, 1);
        }
    }
    m
}

fn matrix_identity(name: String, lhs: Matrix, rhs: Matrix) -> Identity {
    let holds = lhs == rhs;
    let detail = if holds {
        "holds".to_string()
    } else {
        let diff = lhs.sub(&rhs);
        let cols: Vec<String> = (0..diff.cols()).filter(|&c| diff.column(c).iter().any(|&v| v != 0)).map(|c| c.to_string()).collect();
        format!("differs on basis columns {}", cols.join(","))
    };
    Identity::new(name, holds, detail)
}

/// The identities the contracting homotopy is assembled from.
pub fn homotopy_identities(alg: &Algebra) -> Result<Vec<Identity>> {
    let f = alg.field();
    let (k, m, n) = (vx(alg, "K")?, vx(alg, "M")?, vx(alg, "N")?);
    let mut out = Vec::new();
    for (x, y) in [("b", "c"), ("c", "d"), ("d", "b"), ("e*b", "f")] {
        let (_, q, xm) = path_map(alg, x)?;
        let ym = mat(alg, y)?;
        let lhs = xm.mul(&h(alg, x)?).add(&h(alg, y)?.mul(&ym));
        out.push(matrix_identity(format!("{x} h_{x} + h_{y} {y} = Id"), lhs, Matrix::identity(f, alg.pim_dim(q))));
    }
    for sq in Square::ALL {
        let d = sq.data();
        let lhs = mat(alg, d.alpha)?.mul(&h(alg, d.y)?);
        let rhs = h(alg, d.x)?.mul(&mat(alg, d.beta)?);
        out.push(matrix_identity(format!("square {}: alpha h_y = h_x beta", sq.name()), lhs, rhs));
    }
    for sq in [Square::A, Square::C, Square::D] {
        let d = sq.data();
        let hd = h_dash(alg, sq)?;
        let xm = mat(alg, d.x)?;
        let zero = Matrix::zeros(f, hd.rows(), xm.cols());
        out.push(matrix_identity(format!("square {}: h' x = 0", sq.name()), hd.mul(&xm), zero));
        let bm = mat(alg, d.beta)?;
        let q = vx(alg, d.q)?;
        let dim = alg.pim_dim(q);
        let cols = (0..xm.cols()).map(|c| xm.column(c)).chain((0..bm.cols()).map(|c| bm.column(c)));
        let image = EchelonBasis::from_vectors(f, dim, cols);
        let indicator = unit_diag(alg, dim, |i| {
            let mut e = vec![0; dim];
            e[i] = 1;
            image.contains(&e)
        });
        let lhs = bm.mul(&hd).add(&xm.mul(&h(alg, d.x)?));
        out.push(matrix_identity(format!("square {}: beta h' + x h_x is the image indicator", sq.name()), lhs, indicator));
    }
    let (ha, hc, hd) = (h_dash(alg, Square::A)?, h_dash(alg, Square::C)?, h_dash(alg, Square::D)?);
    let one_m = basis_index(alg, m, &format!("1_{}", alg.quiver().vertex_label(m)))?;
    let one_k = basis_index(alg, k, &format!("1_{}", alg.quiver().vertex_label(k)))?;
    let (dm, dk, dn) = (alg.pim_dim(m), alg.pim_dim(k), alg.pim_dim(n));
    out.push(matrix_identity(
        "corner A': c h_c + d h'_A kills 1_M and fixes the rest".into(),
        mat(alg, "c")?.mul(&h(alg, "c")?).add(&mat(alg, "d")?.mul(&ha)),
        unit_diag(alg, dm, |i| i != one_m),
    ));
    out.push(matrix_identity(
        "A' next to (A')^T: h_c d + aeb h'_A = 0".into(),
        h(alg, "c")?.mul(&mat(alg, "d")?).add(&mat(alg, "a*e*b")?.mul(&ha)),
        Matrix::zeros(f, dk, dm),
    ));
    out.push(matrix_identity("A' next to (A')^T: h'_A d keeps only 1_M".into(), ha.mul(&mat(alg, "d")?), unit_diag(alg, dm, |i| i == one_m)));
    out.push(matrix_identity(
        "corner C': d h_d + cae h'_C + h_eb eb = Id".into(),
        mat(alg, "d")?.mul(&h(alg, "d")?).add(&mat(alg, "c*a*e")?.mul(&hc)).add(&h(alg, "e*b")?.mul(&mat(alg, "e*b")?)),
        Matrix::identity(f, dm),
    ));
    let dk_corner = mat(alg, "a")?.mul(&hd).add(&mat(alg, "b")?.mul(&h(alg, "b")?));
    out.push(matrix_identity("corner D': a h'_D + b h_b kills 1_K and fixes the rest".into(), dk_corner.clone(), unit_diag(alg, dk, |i| i != one_k)));
    out.push(matrix_identity("corner D': a h'_D + b h_b + h'_C cae = Id".into(), dk_corner.add(&hc.mul(&mat(alg, "c*a*e")?)), Matrix::identity(f, dk)));
    out.push(matrix_identity(
        "P_N in D': f h_f + h'_D a = Id".into(),
        mat(alg, "f")?.mul(&h(alg, "f")?).add(&hd.mul(&mat(alg, "a")?)),
        Matrix::identity(f, dn),
    ));
    out.push(matrix_identity(
        "P_N in E: eb h_eb + h_f f = Id".into(),
        mat(alg, "e*b")?.mul(&h(alg, "e*b")?).add(&h(alg, "f")?.mul(&mat(alg, "f")?)),
        Matrix::identity(f, dn),
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_of_m_holds_dashed_a() {
        for r in 0..6 {
            let p = placement(Bicx::M, r, r).unwrap();
            assert_eq!((p.square, p.transposed, p.dashed), (Square::A, false, true));
            let q = placement(Bicx::M, r + 1, r).unwrap();
            assert_eq!((q.square, q.transposed, q.dashed), (Square::A, true, true));
        }
        assert_eq!(placement(Bicx::M, 0, 2).unwrap().square, Square::C);
        assert_eq!(placement(Bicx::M, 3, 0).unwrap().square, Square::C);
        assert!(placement(Bicx::M, -1, 0).is_none());
    }

    #[test]
    fn k_leaves_gaps_below_the_staircase() {
        assert_eq!(placement(Bicx::K, 0, 0).unwrap().square, Square::D);
        assert_eq!(placement(Bicx::K, 0, 1).unwrap().square, Square::E);
        assert_eq!(placement(Bicx::K, 1, 2).unwrap().label(), "C'");
        assert_eq!(placement(Bicx::M, 1, 0).unwrap().label(), "(A')^T");
        assert!(placement(Bicx::K, 2, 1).is_none());
        assert_eq!(module_at(Bicx::K, 1, 0), Some("N"));
        assert_eq!(module_at(Bicx::K, 1, 1), Some("N"));
        assert_eq!(module_at(Bicx::K, 2, 1), None);
    }

    #[test]
    fn dashed_squares() {
        let dashed: Vec<&str> = Square::ALL.iter().filter(|s| s.has_dash()).map(|s| s.name()).collect();
        assert_eq!(dashed, ["A", "C", "D"]);
    }
}
