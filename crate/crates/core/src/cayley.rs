//! Exact exterior algebra on ℝ⁸ and the linear algebra of the Cayley 4-form.
//!
//! Forms are sparse maps from strictly increasing index tuples (1-based, so
//! `θ¹ … θ⁸`) to exact rationals. A [`LinearMap8`] acts on coordinates,
//! `x ↦ A x`, so its pullback sends `θⁱ` to `Σⱼ Aᵢⱼ θʲ`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::linalg;

pub const DIM: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CayleyError {
    #[error("wedge of degrees {0} and {1} exceeds dimension 8")]
    DegreeOverflow(usize, usize),
    #[error("expected a form of degree {expected}, got degree {actual}")]
    WrongDegree { expected: usize, actual: usize },
    #[error("invalid index tuple {0:?}: entries must be strictly increasing in 1..=8")]
    BadIndex(Vec<u8>),
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Sign of the shuffle that sorts `a ++ b`, or `None` if they overlap.
fn merge_sign(a: &[u8], b: &[u8]) -> Option<(Vec<u8>, bool)> {
    let mut inversions = 0usize;
    for &x in a {
        for &y in b {
            if x == y {
                return None;
            }
            if x > y {
                inversions += 1;
            }
        }
    }
    let mut merged: Vec<u8> = a.iter().chain(b).copied().collect();
    merged.sort_unstable();
    Some((merged, inversions % 2 == 1))
}

/// All strictly increasing `k`-subsets of `1..=8`, in lexicographic order.
pub fn index_subsets(k: usize) -> Vec<Vec<u8>> {
    fn rec(start: u8, k: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=DIM as u8 {
            cur.push(i);
            rec(i + 1, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, k, &mut Vec::new(), &mut out);
    out
}

/// An exterior form of fixed degree on ℝ⁸ with exact rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Form {
    degree: usize,
    coeffs: BTreeMap<Vec<u8>, BigRational>,
}

impl Form {
    pub fn zero(degree: usize) -> Self {
        assert!(degree <= DIM, "degree {degree} exceeds 8");
        Form { degree, coeffs: BTreeMap::new() }
    }

    /// The basis form `θ^{i₁…i_k}`.
    pub fn basis(indices: &[u8]) -> Result<Self, CayleyError> {
        Self::from_terms(indices.len(), [(indices.to_vec(), rat(1))])
    }

    pub fn from_terms<I>(degree: usize, terms: I) -> Result<Self, CayleyError>
    where
        I: IntoIterator<Item = (Vec<u8>, BigRational)>,
    {
        let mut f = Form::zero(degree);
        for (idx, c) in terms {
            let valid = idx.len() == degree
                && idx.iter().all(|&i| (1..=DIM as u8).contains(&i))
                && idx.windows(2).all(|w| w[0] < w[1]);
            if !valid {
                return Err(CayleyError::BadIndex(idx));
            }
            f.add_term(idx, c);
        }
        Ok(f)
    }

    /// A 1-form `Σ cᵢ θⁱ` from its eight coefficients.
    pub fn one_form(coeffs: &[BigRational; DIM]) -> Self {
        let mut f = Form::zero(1);
        for (i, c) in coeffs.iter().enumerate() {
            f.add_term(vec![i as u8 + 1], c.clone());
        }
        f
    }

    fn add_term(&mut self, idx: Vec<u8>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(idx) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficient(&self, indices: &[u8]) -> BigRational {
        self.coeffs.get(indices).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &BigRational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, s: &BigRational) -> Form {
        let mut out = Form::zero(self.degree);
        for (k, v) in &self.coeffs {
            out.add_term(k.clone(), v * s);
        }
        out
    }

    /// Sum of two forms of the same degree.
    ///
    /// Panics if the degrees differ.
    pub fn add(&self, other: &Form) -> Form {
        assert_eq!(self.degree, other.degree, "adding forms of different degree");
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Form) -> Form {
        self.add(&other.scale(&rat(-1)))
    }

    /// Dense coefficient vector in the lexicographic basis of `index_subsets(degree)`.
    pub fn to_dense(&self) -> Vec<BigRational> {
        index_subsets(self.degree).iter().map(|i| self.coefficient(i)).collect()
    }

    pub fn from_dense(degree: usize, v: &[BigRational]) -> Form {
        let mut f = Form::zero(degree);
        for (idx, c) in index_subsets(degree).into_iter().zip(v) {
            f.add_term(idx, c.clone());
        }
        f
    }

    /// Inner product induced by `g₀ = Σ θⁱ ⊗ θⁱ`: the basis forms are orthonormal.
    pub fn inner(&self, other: &Form) -> BigRational {
        if self.degree != other.degree {
            return BigRational::zero();
        }
        self.coeffs
            .iter()
            .filter_map(|(k, v)| other.coeffs.get(k).map(|w| v * w))
            .fold(BigRational::zero(), |a, b| a + b)
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (n, (k, v)) in self.coeffs.iter().enumerate() {
            let idx: String = k.iter().map(|i| i.to_string()).collect();
            let sign = if v.is_negative() { "-" } else if n > 0 { "+" } else { "" };
            let abs = v.abs();
            if abs.is_one() {
                write!(f, "{sign}θ{idx}")?;
            } else {
                write!(f, "{sign}{abs}·θ{idx}")?;
            }
        }
        Ok(())
    }
}

/// Exterior product; errors when the degrees add up past 8.
pub fn wedge(f: &Form, g: &Form) -> Result<Form, CayleyError> {
    if f.degree + g.degree > DIM {
        return Err(CayleyError::DegreeOverflow(f.degree, g.degree));
    }
    let mut out = Form::zero(f.degree + g.degree);
    for (a, x) in &f.coeffs {
        for (b, y) in &g.coeffs {
            if let Some((idx, negative)) = merge_sign(a, b) {
                let c = x * y;
                out.add_term(idx, if negative { -c } else { c });
            }
        }
    }
    Ok(out)
}

fn wedge_all(factors: &[Form]) -> Form {
    factors.iter().fold(Form::basis(&[]).unwrap(), |acc, f| {
        wedge(&acc, f).expect("factor degrees bounded by 8")
    })
}

/// Hodge star with respect to `g₀` and the orientation `θ¹²³⁴⁵⁶⁷⁸`.
pub fn hodge_star(f: &Form) -> Form {
    let mut out = Form::zero(DIM - f.degree);
    for (idx, c) in &f.coeffs {
        let complement: Vec<u8> = (1..=DIM as u8).filter(|i| !idx.contains(i)).collect();
        let (_, negative) = merge_sign(idx, &complement).expect("complement is disjoint");
        out.add_term(complement, if negative { -c.clone() } else { c.clone() });
    }
    out
}

/// Hodge star restricted to 4-forms, where it is an involution.
pub fn hodge_star4(f: &Form) -> Result<Form, CayleyError> {
    if f.degree != 4 {
        return Err(CayleyError::WrongDegree { expected: 4, actual: f.degree });
    }
    Ok(hodge_star(f))
}

/// An 8×8 rational matrix acting on coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap8 {
    rows: Vec<Vec<BigRational>>,
}

impl LinearMap8 {
    pub fn identity() -> Self {
        Self::from_fn(|i, j| if i == j { rat(1) } else { rat(0) })
    }

    pub fn zero() -> Self {
        Self::from_fn(|_, _| rat(0))
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        LinearMap8 { rows: (0..DIM).map(|i| (0..DIM).map(|j| f(i, j)).collect()).collect() }
    }

    pub fn from_integer_rows(rows: [[i64; DIM]; DIM]) -> Self {
        Self::from_fn(|i, j| rat(rows[i][j]))
    }

    /// Matrix unit `E_{ij}` (0-based), mapping `θ^{i+1}` to `θ^{j+1}` under the derivation action.
    pub fn unit(i: usize, j: usize) -> Self {
        Self::from_fn(|r, c| if r == i && c == j { rat(1) } else { rat(0) })
    }

    /// Build from a signed coordinate permutation: new coordinate `i` equals
    /// `sign * x_{source}` with 1-based `source`.
    pub fn signed_permutation(images: [(i64, usize); DIM]) -> Self {
        Self::from_fn(|i, j| {
            let (sign, src) = images[i];
            if src == j + 1 { rat(sign) } else { rat(0) }
        })
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigRational {
        &self.rows[i][j]
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &LinearMap8) -> LinearMap8 {
        Self::from_fn(|i, j| {
            (0..DIM).fold(BigRational::zero(), |acc, k| acc + &self.rows[i][k] * &other.rows[k][j])
        })
    }

    pub fn pow(&self, e: u32) -> LinearMap8 {
        (0..e).fold(Self::identity(), |acc, _| acc.compose(self))
    }

    pub fn neg(&self) -> LinearMap8 {
        Self::from_fn(|i, j| -self.rows[i][j].clone())
    }

    pub fn sub(&self, other: &LinearMap8) -> LinearMap8 {
        Self::from_fn(|i, j| &self.rows[i][j] - &other.rows[i][j])
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(Zero::is_zero)
    }

    pub fn determinant(&self) -> BigRational {
        let mut m = self.rows.clone();
        let mut det = rat(1);
        for col in 0..DIM {
            let Some(p) = (col..DIM).find(|&r| !m[r][col].is_zero()) else {
                return rat(0);
            };
            if p != col {
                m.swap(p, col);
                det = -det;
            }
            det *= &m[col][col];
            let pivot_row = m[col].clone();
            for row in m.iter_mut().skip(col + 1) {
                let factor = &row[col] / &pivot_row[col];
                for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= &factor * p;
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        !self.determinant().is_zero()
    }

    /// `a^*θⁱ = Σⱼ Aᵢⱼ θʲ` for 1-based `i`.
    fn pulled_back_coordinate(&self, i: u8) -> Form {
        let row: [BigRational; DIM] = std::array::from_fn(|j| self.rows[i as usize - 1][j].clone());
        Form::one_form(&row)
    }

    pub fn is_skew(&self) -> bool {
        (0..DIM).all(|i| (0..DIM).all(|j| self.rows[i][j] == -self.rows[j][i].clone()))
    }
}

/// `(x₁,…,x₈) ↦ (−x₂,x₁,−x₄,x₃,−x₆,x₅,−x₈,x₇)`.
pub fn alpha() -> LinearMap8 {
    LinearMap8::signed_permutation([(-1, 2), (1, 1), (-1, 4), (1, 3), (-1, 6), (1, 5), (-1, 8), (1, 7)])
}

/// `(x₁,…,x₈) ↦ (x₃,−x₄,−x₁,x₂,x₇,−x₈,−x₅,x₆)`.
pub fn beta() -> LinearMap8 {
    LinearMap8::signed_permutation([(1, 3), (-1, 4), (-1, 1), (1, 2), (1, 7), (-1, 8), (-1, 5), (1, 6)])
}

/// `(x₁,…,x₈) ↦ (−x₁,x₃,x₂,x₄,−x₅,x₇,x₆,x₈)`, carrying the z-coordinates to the w-coordinates.
pub fn phi() -> LinearMap8 {
    LinearMap8::signed_permutation([(-1, 1), (1, 3), (1, 2), (1, 4), (-1, 5), (1, 7), (1, 6), (1, 8)])
}

/// Pullback `a^*f`, computed by substituting `a^*θⁱ` into every factor.
pub fn pullback(f: &Form, a: &LinearMap8) -> Form {
    let images: Vec<Form> = (1..=DIM as u8).map(|i| a.pulled_back_coordinate(i)).collect();
    let mut out = Form::zero(f.degree);
    for (idx, c) in &f.coeffs {
        let factors: Vec<Form> = idx.iter().map(|&i| images[i as usize - 1].clone()).collect();
        out = out.add(&wedge_all(&factors).scale(c));
    }
    out
}

/// Derivation action `L_A f = d/dt|₀ exp(tA)^* f`: substitute `A` into one slot at a time.
pub fn derivation(f: &Form, a: &LinearMap8) -> Form {
    let mut out = Form::zero(f.degree);
    for (idx, c) in &f.coeffs {
        for slot in 0..idx.len() {
            let factors: Vec<Form> = idx
                .iter()
                .enumerate()
                .map(|(k, &i)| {
                    if k == slot {
                        a.pulled_back_coordinate(i)
                    } else {
                        Form::basis(&[i]).unwrap()
                    }
                })
                .collect();
            out = out.add(&wedge_all(&factors).scale(c));
        }
    }
    out
}

const CAYLEY_TERMS: [(i64, [u8; 4]); 14] = [
    (1, [1, 2, 3, 4]),
    (1, [1, 2, 5, 6]),
    (1, [1, 2, 7, 8]),
    (1, [1, 3, 5, 7]),
    (-1, [1, 3, 6, 8]),
    (-1, [1, 4, 5, 8]),
    (-1, [1, 4, 6, 7]),
    (-1, [2, 3, 5, 8]),
    (-1, [2, 3, 6, 7]),
    (-1, [2, 4, 5, 7]),
    (1, [2, 4, 6, 8]),
    (1, [3, 4, 5, 6]),
    (1, [3, 4, 7, 8]),
    (1, [5, 6, 7, 8]),
];

/// The standard Cayley 4-form Φ₀.
pub fn make_cayley_form() -> Form {
    Form::from_terms(4, CAYLEY_TERMS.iter().map(|(s, idx)| (idx.to_vec(), rat(*s))))
        .expect("static index table is valid")
}

/// A complex-valued form stored as real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexForm {
    pub re: Form,
    pub im: Form,
}

impl ComplexForm {
    pub fn wedge(&self, other: &ComplexForm) -> Result<ComplexForm, CayleyError> {
        let re = wedge(&self.re, &other.re)?.sub(&wedge(&self.im, &other.im)?);
        let im = wedge(&self.re, &other.im)?.add(&wedge(&self.im, &other.re)?);
        Ok(ComplexForm { re, im })
    }
}

/// A complex coordinate `u + √−1 v` given by the real linear functionals `u`, `v`.
#[derive(Clone, Debug)]
pub struct ComplexCoordinate {
    pub re: [i64; DIM],
    pub im: [i64; DIM],
}

impl ComplexCoordinate {
    fn differential(&self) -> ComplexForm {
        ComplexForm {
            re: Form::one_form(&self.re.map(rat)),
            im: Form::one_form(&self.im.map(rat)),
        }
    }

    /// Coordinate composed with a linear map: `(z ∘ a)(x) = z(a x)`.
    pub fn compose(&self, a: &LinearMap8) -> ([BigRational; DIM], [BigRational; DIM]) {
        let apply = |row: &[i64; DIM]| -> [BigRational; DIM] {
            std::array::from_fn(|j| {
                (0..DIM).fold(BigRational::zero(), |acc, k| acc + rat(row[k]) * a.entry(k, j))
            })
        };
        (apply(&self.re), apply(&self.im))
    }
}

fn unit_row(i: usize, sign: i64) -> [i64; DIM] {
    let mut r = [0; DIM];
    r[i - 1] = sign;
    r
}

/// `zₖ = x_{2k−1} + √−1 x_{2k}`.
pub fn z_coordinates() -> [ComplexCoordinate; 4] {
    std::array::from_fn(|k| ComplexCoordinate {
        re: unit_row(2 * k + 1, 1),
        im: unit_row(2 * k + 2, 1),
    })
}

/// `w₁ = −x₁+√−1x₃, w₂ = x₂+√−1x₄, w₃ = −x₅+√−1x₇, w₄ = x₆+√−1x₈`.
pub fn w_coordinates() -> [ComplexCoordinate; 4] {
    [
        ComplexCoordinate { re: unit_row(1, -1), im: unit_row(3, 1) },
        ComplexCoordinate { re: unit_row(2, 1), im: unit_row(4, 1) },
        ComplexCoordinate { re: unit_row(5, -1), im: unit_row(7, 1) },
        ComplexCoordinate { re: unit_row(6, 1), im: unit_row(8, 1) },
    ]
}

/// Kähler form `(√−1/2) Σ dzₖ∧dz̄ₖ = Σ duₖ∧dvₖ`.
pub fn kahler_form(coords: &[ComplexCoordinate; 4]) -> Form {
    coords.iter().fold(Form::zero(2), |acc, z| {
        let dz = z.differential();
        acc.add(&wedge(&dz.re, &dz.im).unwrap())
    })
}

/// Holomorphic volume form `dz₁∧dz₂∧dz₃∧dz₄`.
pub fn holomorphic_volume(coords: &[ComplexCoordinate; 4]) -> ComplexForm {
    let one = ComplexForm { re: Form::basis(&[]).unwrap(), im: Form::zero(0) };
    coords
        .iter()
        .fold(one, |acc, z| acc.wedge(&z.differential()).unwrap())
}

/// `½ ω∧ω + Re Ω` for the Calabi-Yau structure defined by the given coordinates.
pub fn calabi_yau_cayley(coords: &[ComplexCoordinate; 4]) -> Form {
    let omega = kahler_form(coords);
    let half = BigRational::new(1.into(), 2.into());
    wedge(&omega, &omega).unwrap().scale(&half).add(&holomorphic_volume(coords).re)
}

/// Truth table of the group-theoretic identities for α, β and φ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupRelations {
    pub alpha_order_four: bool,
    pub beta_order_four: bool,
    pub alpha_beta_twisted_commute: bool,
    pub alpha_squared_minus_identity: bool,
    pub phi_maps_z_to_w: bool,
    pub alpha_multiplies_z_by_i: bool,
    pub beta_multiplies_w_by_i: bool,
}

impl GroupRelations {
    pub fn all(&self) -> bool {
        self.alpha_order_four
            && self.beta_order_four
            && self.alpha_beta_twisted_commute
            && self.alpha_squared_minus_identity
            && self.phi_maps_z_to_w
            && self.alpha_multiplies_z_by_i
            && self.beta_multiplies_w_by_i
    }
}

fn coordinate_rows(c: &ComplexCoordinate) -> ([BigRational; DIM], [BigRational; DIM]) {
    (c.re.map(rat), c.im.map(rat))
}

/// Checks that `z ∘ a = √−1 · z` for every coordinate, i.e. `Re(z∘a) = −Im z` and `Im(z∘a) = Re z`.
fn acts_as_i(coords: &[ComplexCoordinate; 4], a: &LinearMap8) -> bool {
    coords.iter().all(|z| {
        let (re, im) = z.compose(a);
        let (zr, zi) = coordinate_rows(z);
        re.iter().zip(&zi).all(|(x, y)| *x == -y.clone()) && im == zr
    })
}

pub fn verify_group_relations() -> GroupRelations {
    let a = alpha();
    let b = beta();
    let id = LinearMap8::identity();
    let z = z_coordinates();
    let w = w_coordinates();
    let phi_ok = z.iter().zip(&w).all(|(zk, wk)| zk.compose(&phi()) == coordinate_rows(wk));
    GroupRelations {
        alpha_order_four: a.pow(4) == id,
        beta_order_four: b.pow(4) == id,
        alpha_beta_twisted_commute: a.compose(&b).sub(&b.compose(&a.pow(3))).is_zero(),
        alpha_squared_minus_identity: a.pow(2) == id.neg(),
        phi_maps_z_to_w: phi_ok,
        alpha_multiplies_z_by_i: acts_as_i(&z, &a),
        beta_multiplies_w_by_i: acts_as_i(&w, &b),
    }
}

/// Spanning set `{ L_{E_ij} Φ₀ }` of the tangent space to the `GL(8)`-orbit of Φ₀,
/// with the exact rank of its span.
#[derive(Clone, Debug)]
pub struct OrbitTangent {
    pub generators: Vec<Form>,
    pub rank: usize,
}

fn integer_rows(forms: &[Form]) -> Vec<Vec<BigInt>> {
    forms
        .iter()
        .map(|f| {
            f.to_dense()
                .into_iter()
                .map(|c| {
                    assert!(c.is_integer(), "generator coefficients are integral");
                    c.to_integer()
                })
                .collect()
        })
        .collect()
}

pub fn orbit_tangent_basis() -> OrbitTangent {
    let phi0 = make_cayley_form();
    let generators: Vec<Form> = (0..DIM)
        .flat_map(|i| (0..DIM).map(move |j| (i, j)))
        .map(|(i, j)| derivation(&phi0, &LinearMap8::unit(i, j)))
        .collect();
    let rank = linalg::rank_bareiss(&integer_rows(&generators));
    OrbitTangent { generators, rank }
}

/// Basis of the Lie algebra `{ A : L_A Φ₀ = 0 }`, found as a null space over the rationals.
pub fn stabilizer_algebra() -> Vec<LinearMap8> {
    let phi0 = make_cayley_form();
    // column (i,j) of this 70×64 matrix is L_{E_ij} Φ₀
    let columns: Vec<Vec<BigRational>> = (0..DIM * DIM)
        .map(|k| derivation(&phi0, &LinearMap8::unit(k / DIM, k % DIM)).to_dense())
        .collect();
    let rows: Vec<Vec<BigRational>> = (0..columns[0].len())
        .map(|r| columns.iter().map(|c| c[r].clone()).collect())
        .collect();
    linalg::nullspace(&rows, DIM * DIM)
        .into_iter()
        .map(|v| LinearMap8::from_fn(|i, j| v[i * DIM + j].clone()))
        .collect()
}

/// Anti-self-dual basis forms `θ^I − *θ^I`, one per complementary pair.
pub fn anti_self_dual_basis() -> Vec<Form> {
    index_subsets(4)
        .into_iter()
        .filter(|idx| idx[0] == 1)
        .map(|idx| {
            let f = Form::basis(&idx).unwrap();
            f.sub(&hodge_star(&f))
        })
        .collect()
}

/// Whether `candidate` lies in the rational span of `span`.
pub fn in_span(span: &[Form], candidate: &Form) -> bool {
    if candidate.is_zero() {
        return true;
    }
    let mut rows: Vec<Form> = span.to_vec();
    let base = rank_of(&rows);
    rows.push(candidate.clone());
    rank_of(&rows) == base
}

/// Exact rank of a family of forms of one degree.
pub fn rank_of(forms: &[Form]) -> usize {
    let dense: Vec<Vec<BigRational>> = forms.iter().map(Form::to_dense).collect();
    linalg::rref(&dense).0.len()
}

/// Every anti-self-dual 4-form lies in the orbit tangent space at Φ₀.
pub fn check_asd_inclusion() -> bool {
    let tangent = orbit_tangent_basis();
    let asd = anti_self_dual_basis();
    let mut all = tangent.generators.clone();
    all.extend(asd);
    rank_of(&all) == tangent.rank
}

/// Orthogonal complement of the orbit tangent space inside Λ⁴, as a basis of forms.
pub fn normal_space_basis() -> Vec<Form> {
    let tangent = orbit_tangent_basis();
    let rows: Vec<Vec<BigRational>> = tangent.generators.iter().map(Form::to_dense).collect();
    let n = rows[0].len();
    linalg::nullspace(&rows, n)
        .into_iter()
        .map(|v| Form::from_dense(4, &v))
        .collect()
}

/// Linear part of the projection onto Cayley forms at Φ₀: the `g₀`-orthogonal
/// split `η = p(η) + (η − p(η))` with `p(η)` tangent to the orbit.
pub fn split_at_cayley(eta: &Form) -> Result<(Form, Form), CayleyError> {
    if eta.degree() != 4 {
        return Err(CayleyError::WrongDegree { expected: 4, actual: eta.degree() });
    }
    let tangent = orbit_tangent_basis();
    let dense: Vec<Vec<BigRational>> = tangent.generators.iter().map(Form::to_dense).collect();
    let (basis, _) = linalg::rref(&dense);
    let gram: Vec<Vec<BigRational>> = basis
        .iter()
        .map(|r| basis.iter().map(|s| linalg::dot(r, s)).collect())
        .collect();
    let v = eta.to_dense();
    let rhs: Vec<BigRational> = basis.iter().map(|r| linalg::dot(r, &v)).collect();
    let coeffs = linalg::solve(&gram, &rhs).expect("row-reduced basis has a nonsingular Gram matrix");
    let mut proj = vec![BigRational::zero(); v.len()];
    for (c, row) in coeffs.iter().zip(&basis) {
        for (p, x) in proj.iter_mut().zip(row) {
            *p += c * x;
        }
    }
    let tangent_part = Form::from_dense(4, &proj);
    let normal_part = eta.sub(&tangent_part);
    Ok((tangent_part, normal_part))
}

/// One line of the Cayley verification report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub passed: bool,
}

/// Everything `cayley verify` prints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CayleyReport {
    pub checks: Vec<IdentityCheck>,
    pub tangent_rank: usize,
    pub stabilizer_dimension: usize,
    pub anti_self_dual_dimension: usize,
    pub normal_dimension: usize,
}

impl CayleyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub fn verify() -> CayleyReport {
    let phi0 = make_cayley_form();
    let rel = verify_group_relations();
    let tangent = orbit_tangent_basis();
    let stabilizer = stabilizer_algebra();
    let asd = anti_self_dual_basis();
    let normal = normal_space_basis();
    let orthogonal = normal
        .iter()
        .all(|n| tangent.generators.iter().all(|t| n.inner(t).is_zero()));

    let mut checks = Vec::new();
    let mut push = |identity: &str, passed: bool| {
        checks.push(IdentityCheck { identity: identity.to_string(), passed });
    };
    push("α⁴ = id", rel.alpha_order_four);
    push("β⁴ = id", rel.beta_order_four);
    push("αβ = βα³", rel.alpha_beta_twisted_commute);
    push("α² = −id", rel.alpha_squared_minus_identity);
    push("z ∘ φ = w", rel.phi_maps_z_to_w);
    push("α acts as √−1 on z", rel.alpha_multiplies_z_by_i);
    push("β acts as √−1 on w", rel.beta_multiplies_w_by_i);
    push("α*Φ₀ = Φ₀", pullback(&phi0, &alpha()) == phi0);
    push("β*Φ₀ = Φ₀", pullback(&phi0, &beta()) == phi0);
    push("φ*Φ₀ = Φ₀", pullback(&phi0, &phi()) == phi0);
    push("½ω₀∧ω₀ + Re Ω₀ = Φ₀", calabi_yau_cayley(&z_coordinates()) == phi0);
    push("½ω′₀∧ω′₀ + Re Ω′₀ = Φ₀", calabi_yau_cayley(&w_coordinates()) == phi0);
    push("*Φ₀ = Φ₀", hodge_star(&phi0) == phi0);
    push("stabilizer algebra ⊂ so(8)", stabilizer.iter().all(LinearMap8::is_skew));
    push(
        "stabilizer annihilates Φ₀",
        stabilizer.iter().all(|a| derivation(&phi0, a).is_zero()),
    );
    push("rank + stabilizer dimension = 64", tangent.rank + stabilizer.len() == DIM * DIM);
    push("Λ⁴₋ ⊂ T_Φ₀ A", check_asd_inclusion());
    push("normal space ⟂ tangent space", orthogonal);
    push("tangent rank + normal dimension = 70", tangent.rank + normal.len() == 70);

    CayleyReport {
        checks,
        tangent_rank: tangent.rank,
        stabilizer_dimension: stabilizer.len(),
        anti_self_dual_dimension: rank_of(&asd),
        normal_dimension: normal.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta(idx: &[u8]) -> Form {
        Form::basis(idx).unwrap()
    }

    #[test]
    fn cayley_coefficients() {
        let phi0 = make_cayley_form();
        assert_eq!(phi0.len(), 14);
        assert_eq!(phi0.coefficient(&[1, 2, 3, 4]), rat(1));
        assert_eq!(phi0.coefficient(&[1, 3, 6, 8]), rat(-1));
        assert_eq!(phi0.coefficient(&[1, 2, 3, 5]), rat(0));
    }

    #[test]
    fn pullback_by_identity_and_minus_identity() {
        let phi0 = make_cayley_form();
        assert_eq!(pullback(&phi0, &LinearMap8::identity()), phi0);
        assert_eq!(pullback(&phi0, &LinearMap8::identity().neg()), phi0);
        // odd degree picks up the sign
        let t = theta(&[1, 2, 3]);
        assert_eq!(pullback(&t, &LinearMap8::identity().neg()), t.scale(&rat(-1)));
    }

    #[test]
    fn alpha_beta_fix_cayley_form() {
        let phi0 = make_cayley_form();
        assert_eq!(pullback(&phi0, &alpha()), phi0);
        assert_eq!(pullback(&phi0, &beta()), phi0);
    }

    #[test]
    fn both_calabi_yau_presentations() {
        let phi0 = make_cayley_form();
        assert_eq!(calabi_yau_cayley(&z_coordinates()), phi0);
        assert_eq!(calabi_yau_cayley(&w_coordinates()), phi0);
    }

    #[test]
    fn kahler_form_in_z_coordinates() {
        let omega = kahler_form(&z_coordinates());
        let expected = theta(&[1, 2]).add(&theta(&[3, 4])).add(&theta(&[5, 6])).add(&theta(&[7, 8]));
        assert_eq!(omega, expected);
    }

    #[test]
    fn wedge_alternates_and_overflows() {
        assert!(wedge(&theta(&[1]), &theta(&[1])).unwrap().is_zero());
        assert_eq!(wedge(&theta(&[2]), &theta(&[1])).unwrap(), theta(&[1, 2]).scale(&rat(-1)));
        assert_eq!(
            wedge(&theta(&[1, 2, 3, 4, 5]), &theta(&[1, 6, 7, 8])),
            Err(CayleyError::DegreeOverflow(5, 4))
        );
    }

    #[test]
    fn group_relations_hold() {
        let rel = verify_group_relations();
        assert!(rel.all(), "{rel:?}");
    }

    #[test]
    fn alpha_squared_is_minus_identity_by_matrix_product() {
        // direct entrywise product, independent of LinearMap8::compose
        let a = alpha();
        for i in 0..DIM {
            for j in 0..DIM {
                let mut s = BigRational::zero();
                for k in 0..DIM {
                    s += a.entry(i, k) * a.entry(k, j);
                }
                let expected = if i == j { rat(-1) } else { rat(0) };
                assert_eq!(s, expected, "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn hodge_star_examples() {
        assert_eq!(hodge_star4(&theta(&[1, 2, 3, 4])).unwrap(), theta(&[5, 6, 7, 8]));
        let phi0 = make_cayley_form();
        // termwise: each term's complement appears with the same sign
        for (idx, c) in phi0.terms() {
            let star = hodge_star(&Form::from_terms(4, [(idx.clone(), c.clone())]).unwrap());
            let (cidx, cc) = star.terms().next().unwrap();
            assert_eq!(&phi0.coefficient(cidx), cc);
        }
        assert_eq!(hodge_star4(&phi0).unwrap(), phi0);
        let asd = theta(&[1, 2, 3, 4]).sub(&theta(&[5, 6, 7, 8]));
        assert_eq!(hodge_star4(&asd).unwrap(), asd.scale(&rat(-1)));
        assert_eq!(
            hodge_star4(&theta(&[1, 2])),
            Err(CayleyError::WrongDegree { expected: 4, actual: 2 })
        );
    }

    #[test]
    fn hodge_star_sign_matches_volume() {
        // θ^I ∧ *θ^I = vol for every basis 4-form
        let vol = theta(&[1, 2, 3, 4, 5, 6, 7, 8]);
        for idx in index_subsets(4) {
            let t = theta(&idx);
            assert_eq!(wedge(&t, &hodge_star(&t)).unwrap(), vol);
        }
    }

    #[test]
    fn derivation_by_identity_scales_by_degree() {
        let phi0 = make_cayley_form();
        assert_eq!(derivation(&phi0, &LinearMap8::identity()), phi0.scale(&rat(4)));
    }

    #[test]
    fn rotation_generator_splits_exactly() {
        let phi0 = make_cayley_form();
        let rot = LinearMap8::unit(0, 1).sub(&LinearMap8::unit(1, 0));
        let l = derivation(&phi0, &rot);
        assert!(!l.is_zero());
        let (t, n) = split_at_cayley(&l).unwrap();
        assert_eq!(t, l);
        assert!(n.is_zero());
    }

    #[test]
    fn tangent_rank_and_stabilizer() {
        let tangent = orbit_tangent_basis();
        let stab = stabilizer_algebra();
        assert_eq!(tangent.generators.len(), 64);
        assert_eq!(tangent.rank + stab.len(), 64);
        assert_eq!(tangent.rank, 43);
        assert_eq!(stab.len(), 21);
    }

    #[test]
    fn asd_inclusion_and_self_dual_probe() {
        assert!(check_asd_inclusion());
        assert_eq!(rank_of(&anti_self_dual_basis()), 35);
        let tangent = orbit_tangent_basis();
        assert!(in_span(&tangent.generators, &Form::zero(4)));
        // Φ₀ itself is self-dual and tangent (scaling direction)
        assert!(in_span(&tangent.generators, &make_cayley_form()));
    }

    #[test]
    fn split_of_self_dual_probe_is_orthogonal() {
        let sd = theta(&[1, 2, 3, 4]).add(&theta(&[5, 6, 7, 8]));
        let (t, n) = split_at_cayley(&sd).unwrap();
        assert_eq!(t.add(&n), sd);
        assert!(t.inner(&n).is_zero());
        for g in &orbit_tangent_basis().generators {
            assert!(n.inner(g).is_zero());
        }
    }
}
