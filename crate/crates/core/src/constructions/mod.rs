//! Named group families, products, and finite-field support.

pub mod field;
mod witness;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use field::{Field, FieldElement, FieldError, FieldOp, Matrix3};
pub use witness::{sl3_p4_witness, su3_p4_witness, MatrixWitness, PatternReport, WitnessError};

use crate::catalog::Catalog;
use crate::group::{ElementSet, GeneratorSpec, Group, GroupError, PermData, CAYLEY_THRESHOLD, DEFAULT_CLOSURE_CAP};
use crate::perm::Perm;

const SZ8_DATA: &str = include_str!("../../data/sz8.cat");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A group family from the classification results, with its parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Cyclic(usize),
    /// Direct product of cyclic groups of the listed orders.
    AbelianProduct(Vec<usize>),
    /// `D_{2n}`, of order `2n`.
    Dihedral(usize),
    /// `D(A)` for `A` given by its cyclic factors.
    GeneralizedDihedral(Vec<usize>),
    /// `Q_{4m}`, of order `4m`.
    GeneralizedQuaternion(usize),
    Symmetric(usize),
    Alternating(usize),
    Psl2(u32),
    Suzuki(u32),
    /// `D8 ∘ D8`.
    ExtraspecialPlus32,
    /// `D8 ∘ Q8`.
    ExtraspecialMinus32,
    /// The affine group `5:4`, isomorphic to `Sz(2)`.
    Frobenius20,
    /// Direct product of the listed families, left to right.
    Product(Vec<FamilySpec>),
}

impl FamilySpec {
    pub fn build(&self) -> Result<Group, ConstructionError> {
        build_family(self)
    }

    /// Order predicted by the closed-form formula, without building.
    pub fn expected_order(&self) -> Option<usize> {
        Some(match self {
            FamilySpec::Cyclic(n) => *n,
            FamilySpec::AbelianProduct(f) => f.iter().product(),
            FamilySpec::Dihedral(n) => 2 * n,
            FamilySpec::GeneralizedDihedral(f) => 2 * f.iter().product::<usize>(),
            FamilySpec::GeneralizedQuaternion(m) => 4 * m,
            FamilySpec::Symmetric(n) => (1..=*n).product(),
            FamilySpec::Alternating(n) => ((1..=*n).product::<usize>() / 2).max(1),
            FamilySpec::Psl2(q) => {
                let q = *q as usize;
                q * (q * q - 1) / if q % 2 == 1 { 2 } else { 1 }
            }
            FamilySpec::Suzuki(2) => 20,
            FamilySpec::Suzuki(8) => 29120,
            FamilySpec::Suzuki(_) => return None,
            FamilySpec::ExtraspecialPlus32 | FamilySpec::ExtraspecialMinus32 => 32,
            FamilySpec::Frobenius20 => 20,
            FamilySpec::Product(parts) => parts.iter().map(|p| p.expected_order()).product::<Option<usize>>()?,
        })
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            FamilySpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            FamilySpec::AbelianProduct(v) => write!(f, "abelian:{}", list(v)),
            FamilySpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            FamilySpec::GeneralizedDihedral(v) => write!(f, "gdih:{}", list(v)),
            FamilySpec::GeneralizedQuaternion(m) => write!(f, "quaternion:{m}"),
            FamilySpec::Symmetric(n) => write!(f, "sym:{n}"),
            FamilySpec::Alternating(n) => write!(f, "alt:{n}"),
            FamilySpec::Psl2(q) => write!(f, "psl2:{q}"),
            FamilySpec::Suzuki(q) => write!(f, "suzuki:{q}"),
            FamilySpec::ExtraspecialPlus32 => f.write_str("extraspecial+"),
            FamilySpec::ExtraspecialMinus32 => f.write_str("extraspecial-"),
            FamilySpec::Frobenius20 => f.write_str("frobenius20"),
            FamilySpec::Product(parts) => {
                let s: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                f.write_str(&s.join("*"))
            }
        }
    }
}

impl FromStr for FamilySpec {
    type Err = ConstructionError;

    /// Accepts `tag:params` (`sym:4`, `gdih:2,6`, `psl2:7`, ...), products
    /// joined with `*`, and the short names `S4`, `A6`, `D12` (order 12),
    /// `Q8` (order 8), `Z6`/`C6`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.contains('*') {
            let parts = s.split('*').map(str::parse).collect::<Result<Vec<_>, _>>()?;
            return Ok(FamilySpec::Product(parts));
        }
        let bad = || ConstructionError::BadParameter(format!("cannot parse family {s:?}"));
        let ints = |t: &str| -> Result<Vec<usize>, ConstructionError> {
            t.split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|_| bad()))
                .collect()
        };
        let one = |t: &str| -> Result<usize, ConstructionError> { t.trim().parse::<usize>().map_err(|_| bad()) };
        if let Some((tag, params)) = s.split_once(':') {
            return Ok(match tag.to_ascii_lowercase().as_str() {
                "cyclic" => FamilySpec::Cyclic(one(params)?),
                "abelian" => FamilySpec::AbelianProduct(ints(params)?),
                "dihedral" => FamilySpec::Dihedral(one(params)?),
                "gdih" | "generalized-dihedral" => FamilySpec::GeneralizedDihedral(ints(params)?),
                "quaternion" => FamilySpec::GeneralizedQuaternion(one(params)?),
                "sym" | "symmetric" => FamilySpec::Symmetric(one(params)?),
                "alt" | "alternating" => FamilySpec::Alternating(one(params)?),
                "psl2" => FamilySpec::Psl2(one(params)? as u32),
                "suzuki" | "sz" => FamilySpec::Suzuki(one(params)? as u32),
                _ => return Err(bad()),
            });
        }
        match s.to_ascii_lowercase().as_str() {
            "extraspecial+" | "d8od8" => return Ok(FamilySpec::ExtraspecialPlus32),
            "extraspecial-" | "d8oq8" => return Ok(FamilySpec::ExtraspecialMinus32),
            "frobenius20" => return Ok(FamilySpec::Frobenius20),
            _ => {}
        }
        let (head, tail) = s.split_at(1);
        let n = one(tail)?;
        match head {
            "S" => Ok(FamilySpec::Symmetric(n)),
            "A" => Ok(FamilySpec::Alternating(n)),
            "Z" | "C" => Ok(FamilySpec::Cyclic(n)),
            "D" if n % 2 == 0 && n > 0 => Ok(FamilySpec::Dihedral(n / 2)),
            "Q" if n % 4 == 0 && n >= 8 => Ok(FamilySpec::GeneralizedQuaternion(n / 4)),
            _ => Err(bad()),
        }
    }
}

fn positive(name: &str, n: usize) -> Result<(), ConstructionError> {
    if n == 0 {
        Err(ConstructionError::BadParameter(format!("{name} must be positive")))
    } else {
        Ok(())
    }
}

pub fn build_family(spec: &FamilySpec) -> Result<Group, ConstructionError> {
    match spec {
        FamilySpec::Cyclic(n) => abelian_group(&[*n]),
        FamilySpec::AbelianProduct(factors) => abelian_group(factors),
        FamilySpec::Dihedral(n) => {
            positive("dihedral n", *n)?;
            generalized_dihedral(&[*n])
        }
        FamilySpec::GeneralizedDihedral(factors) => generalized_dihedral(factors),
        FamilySpec::GeneralizedQuaternion(m) => generalized_quaternion(*m),
        FamilySpec::Symmetric(n) => symmetric(*n),
        FamilySpec::Alternating(n) => alternating(*n),
        FamilySpec::Psl2(q) => psl2(*q),
        FamilySpec::Suzuki(q) => suzuki(*q),
        FamilySpec::ExtraspecialPlus32 => Ok(extraspecial(ExtraspecialKind::Plus)?.group),
        FamilySpec::ExtraspecialMinus32 => Ok(extraspecial(ExtraspecialKind::Minus)?.group),
        FamilySpec::Frobenius20 => frobenius20(),
        FamilySpec::Product(parts) => {
            let mut iter = parts.iter();
            let first = iter
                .next()
                .ok_or_else(|| ConstructionError::BadParameter("empty product".into()))?;
            let mut acc = build_family(first)?;
            for p in iter {
                acc = direct_product(&acc, &build_family(p)?)?;
            }
            Ok(acc)
        }
    }
}

/// Mixed-radix arithmetic on `Z_{f1} x ... x Z_{fr}`; the first factor is the
/// least significant digit, so `Z_n` elements are their residues.
struct MixedRadix {
    factors: Vec<usize>,
}

impl MixedRadix {
    fn new(factors: &[usize]) -> Result<Self, ConstructionError> {
        if factors.is_empty() {
            return Err(ConstructionError::BadParameter("empty factor list".into()));
        }
        for &f in factors {
            positive("cyclic factor", f)?;
        }
        Ok(MixedRadix {
            factors: factors.to_vec(),
        })
    }

    fn size(&self) -> usize {
        self.factors.iter().product()
    }

    fn combine(&self, a: usize, b: usize, negate_b: bool) -> usize {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut scale = 1;
        for &f in &self.factors {
            let (x, y) = (a % f, b % f);
            a /= f;
            b /= f;
            let y = if negate_b { (f - y) % f } else { y };
            out += ((x + y) % f) * scale;
            scale *= f;
        }
        out
    }
}

fn check_size(order: usize) -> Result<(), ConstructionError> {
    if order > CAYLEY_THRESHOLD {
        Err(GroupError::SizeCap(order).into())
    } else {
        Ok(())
    }
}

fn abelian_group(factors: &[usize]) -> Result<Group, ConstructionError> {
    let a = MixedRadix::new(factors)?;
    let n = a.size();
    check_size(n)?;
    let mut table = vec![0u32; n * n];
    for x in 0..n {
        for y in 0..n {
            table[x * n + y] = a.combine(x, y, false) as u32;
        }
    }
    Ok(Group::from_table(n, table))
}

/// `D(A) = A ⋊ <x>` with `x` inverting `A`; element `a x^j` has index
/// `a + |A| j`.
fn generalized_dihedral(factors: &[usize]) -> Result<Group, ConstructionError> {
    let a = MixedRadix::new(factors)?;
    let m = a.size();
    let n = 2 * m;
    check_size(n)?;
    let mut table = vec![0u32; n * n];
    for g in 0..n {
        let (ga, gj) = (g % m, g / m);
        for h in 0..n {
            let (ha, hj) = (h % m, h / m);
            // (a x^j)(c x^l) = (a + (-1)^j c) x^(j+l)
            let prod = a.combine(ga, ha, gj == 1) + m * (gj ^ hj);
            table[g * n + h] = prod as u32;
        }
    }
    Ok(Group::from_table(n, table))
}

/// `Q_{4m} = <x, y | x^m = y^2, x^{2m} = e, y^-1 x y = x^-1>`; element
/// `x^i y^j` has index `i + 2m j`.
fn generalized_quaternion(m: usize) -> Result<Group, ConstructionError> {
    if m < 2 {
        return Err(ConstructionError::BadParameter(
            "generalized quaternion needs m >= 2".into(),
        ));
    }
    let r = 2 * m;
    let n = 4 * m;
    check_size(n)?;
    let mut table = vec![0u32; n * n];
    for g in 0..n {
        let (gi, gj) = (g % r, g / r);
        for h in 0..n {
            let (hi, hj) = (h % r, h / r);
            // y^j x^k = x^((-1)^j k) y^j, and y^2 = x^m
            let k = if gj == 1 { (r - hi) % r } else { hi };
            let mut i = (gi + k) % r;
            let j = gj + hj;
            let j = if j == 2 {
                i = (i + m) % r;
                0
            } else {
                j
            };
            table[g * n + h] = (i + r * j) as u32;
        }
    }
    Ok(Group::from_table(n, table))
}

fn cycle(points: impl IntoIterator<Item = usize>, degree: usize) -> Perm {
    let pts: Vec<usize> = points.into_iter().collect();
    let mut images: Vec<u32> = (0..degree as u32).collect();
    for (i, &p) in pts.iter().enumerate() {
        images[p - 1] = (pts[(i + 1) % pts.len()] - 1) as u32;
    }
    Perm::from_images(images).expect("a cycle is a bijection")
}

fn symmetric(n: usize) -> Result<Group, ConstructionError> {
    positive("symmetric degree", n)?;
    if n > 6 {
        return Err(ConstructionError::UnsupportedParameter(format!(
            "symmetric groups above S6 are not built (asked for S{n})"
        )));
    }
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(cycle([1, 2], n));
    }
    if n >= 3 {
        gens.push(cycle(1..=n, n));
    }
    let spec = GeneratorSpec::new(n, gens);
    Ok(Group::from_generators(
        &spec,
        FamilySpec::Symmetric(n).expected_order(),
    )?)
}

fn alternating(n: usize) -> Result<Group, ConstructionError> {
    positive("alternating degree", n)?;
    if n > 8 {
        return Err(ConstructionError::UnsupportedParameter(format!(
            "alternating groups above A8 are not built (asked for A{n})"
        )));
    }
    let mut gens = Vec::new();
    if n >= 3 {
        gens.push(cycle([1, 2, 3], n));
    }
    if n >= 4 {
        gens.push(if n % 2 == 1 { cycle(1..=n, n) } else { cycle(2..=n, n) });
    }
    let spec = GeneratorSpec::new(n, gens);
    Ok(Group::from_generators(
        &spec,
        FamilySpec::Alternating(n).expected_order(),
    )?)
}

/// `PSL(2,q)` acting on the `q + 1` points of the projective line. Point
/// `c < q` is the field element with code `c`; point `q` is infinity.
fn psl2(q: u32) -> Result<Group, ConstructionError> {
    let field = Field::new(q).map_err(|e| match e {
        FieldError::NotPrimePower(_) => ConstructionError::BadParameter(format!("PSL(2,{q}): q must be a prime power")),
        other => other.into(),
    })?;
    let inf = q as usize;
    let degree = inf + 1;
    let w = field.primitive_element();
    let map = |f: &dyn Fn(FieldElement) -> Option<FieldElement>| -> Perm {
        let mut images = vec![0u32; degree];
        for x in field.elements() {
            images[x.code() as usize] = f(x).map_or(inf as u32, |y| y.code());
        }
        images[inf] = f_at_infinity(f, &field).map_or(inf as u32, |y| y.code());
        Perm::from_images(images).expect("projective maps are bijections")
    };
    // x -> x + t^i spans all translations; x -> w^2 x and x -> -1/x complete
    // the generation of PSL(2,q).
    let mut gens = Vec::new();
    let mut basis = field.one();
    for _ in 0..field.degree() {
        let b = basis;
        gens.push(map(&|x| Some(field.add(x, b))));
        basis = field.mul(basis, w);
    }
    let w2 = field.mul(w, w);
    if w2 != field.one() {
        gens.push(map(&|x| Some(field.mul(w2, x))));
    }
    gens.push(map(&|x| field.inv(x).ok().map(|ix| field.neg(ix))));
    let spec = GeneratorSpec::new(degree, gens);
    Ok(Group::from_generators(&spec, FamilySpec::Psl2(q).expected_order())?)
}

// Affine maps fix infinity; only x -> -1/x moves it (to 0).
fn f_at_infinity(f: &dyn Fn(FieldElement) -> Option<FieldElement>, field: &Field) -> Option<FieldElement> {
    match f(field.zero()) {
        None => Some(field.zero()),
        Some(_) => None,
    }
}

fn frobenius20() -> Result<Group, ConstructionError> {
    let spec = GeneratorSpec::from_cycles(5, &["(1 2 3 4 5)", "(2 3 5 4)"])?;
    Ok(Group::from_generators(&spec, Some(20))?)
}

fn suzuki(q: u32) -> Result<Group, ConstructionError> {
    match q {
        2 => frobenius20(),
        8 => {
            let catalog = Catalog::parse(SZ8_DATA).expect("shipped Sz(8) data parses");
            let entry = &catalog.entries()[0];
            Ok(Group::from_generators(&entry.generator_spec(), Some(29120))?)
        }
        _ => Err(ConstructionError::UnsupportedParameter(format!(
            "Sz({q}): only q = 2 and q = 8 are built"
        ))),
    }
}

/// The affine group `{x -> a x + b}` over GF(q) with `a` ranging over the
/// multiplicative subgroup of order `d`, together with the point stabilizer
/// of 0 (a Frobenius complement when `1 < d`).
pub fn affine_frobenius(q: u32, d: u32) -> Result<(Group, ElementSet), ConstructionError> {
    let field = Field::new(q)?;
    if d == 0 || !(q - 1).is_multiple_of(d) {
        return Err(ConstructionError::BadParameter(format!(
            "{d} does not divide {}",
            q - 1
        )));
    }
    let degree = q as usize;
    let map = |f: &dyn Fn(FieldElement) -> FieldElement| -> Perm {
        let images = field.elements().map(|x| f(x).code()).collect();
        Perm::from_images(images).expect("affine maps are bijections")
    };
    let mut gens = Vec::new();
    let mut basis = field.one();
    let t = field.primitive_element();
    for _ in 0..field.degree() {
        let b = basis;
        gens.push(map(&|x| field.add(x, b)));
        basis = field.mul(basis, t);
    }
    let a = field.pow(t, ((q - 1) / d) as u64);
    let scale = map(&|x| field.mul(a, x));
    gens.push(scale.clone());
    let spec = GeneratorSpec::new(degree, gens);
    let group = Group::from_generators(&spec, Some((q * d) as usize))?;
    let s = group.element_of(&scale).expect("generator lies in the group");
    let complement = group.subgroup_closure(&ElementSet::new(group.order(), vec![s])?)?;
    Ok((group, complement))
}

/// `H x K` with `(h, k)` at index `h |K| + k`.
pub fn direct_product(h: &Group, k: &Group) -> Result<Group, ConstructionError> {
    let (nh, nk) = (h.order(), k.order());
    let n = nh
        .checked_mul(nk)
        .filter(|&n| n <= DEFAULT_CLOSURE_CAP)
        .ok_or(GroupError::SizeCap(usize::MAX))?;
    let perms = match (h.perm_data(), k.perm_data()) {
        (Some(_), Some(_)) => {
            let (dh, dk) = (h.degree().unwrap(), k.degree().unwrap());
            let elements = (0..n)
                .map(|g| {
                    let mut img: Vec<u32> = h.perm_of(g / nk).unwrap().images().to_vec();
                    img.extend(k.perm_of(g % nk).unwrap().images().iter().map(|&x| x + dh as u32));
                    img
                })
                .collect();
            Some(PermData::from_elements(dh + dk, elements))
        }
        _ => None,
    };
    if n <= CAYLEY_THRESHOLD {
        let (ht, kt) = (h.to_cayley()?, k.to_cayley()?);
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            let (ah, ak) = (a / nk, a % nk);
            for b in 0..n {
                let (bh, bk) = (b / nk, b % nk);
                table[a * n + b] = (ht.mul(ah, bh) * nk + kt.mul(ak, bk)) as u32;
            }
        }
        return Ok(Group::from_parts(n, Some(table), perms));
    }
    match perms {
        Some(p) => Ok(Group::from_parts(n, None, Some(p))),
        None => Err(GroupError::SizeCap(n).into()),
    }
}

/// A central product with the map from `H x K` onto it.
#[derive(Debug, Clone)]
pub struct CentralProduct {
    pub group: Group,
    coset_of: Vec<u32>,
    k_order: usize,
}

impl CentralProduct {
    /// Image of the pair `(h, k)`.
    pub fn image(&self, h: usize, k: usize) -> usize {
        self.coset_of[h * self.k_order + k] as usize
    }
}

/// `(H x K) / {(z^i, w^i)}` identifying `<z>` in `Z(H)` with `<w>` in `Z(K)`
/// via `z -> w`.
pub fn central_product(h: &Group, k: &Group, z_h: usize, z_k: usize) -> Result<CentralProduct, ConstructionError> {
    for (g, z) in [(h, z_h), (k, z_k)] {
        if z >= g.order() {
            return Err(GroupError::IndexOutOfRange {
                index: z,
                order: g.order(),
            }
            .into());
        }
        if !(0..g.order()).all(|x| g.commute(z, x)) {
            return Err(GroupError::NotCentral(z).into());
        }
    }
    let (oh, ok) = (h.order_of(z_h), k.order_of(z_k));
    if oh != ok {
        return Err(GroupError::OrderMismatch {
            expected: oh,
            actual: ok,
        }
        .into());
    }
    let product = direct_product(h, k)?;
    let nk = k.order();
    let diagonal: Vec<usize> = (0..oh as u64).map(|i| h.pow(z_h, i) * nk + k.pow(z_k, i)).collect();
    let diagonal = ElementSet::new(product.order(), diagonal)?;
    let q = product.quotient(&diagonal)?;
    Ok(CentralProduct {
        group: q.group,
        coset_of: q.coset_of,
        k_order: nk,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtraspecialKind {
    /// `D8 ∘ D8`
    Plus,
    /// `D8 ∘ Q8`
    Minus,
}

/// An extraspecial group of order 32 with the presentation generators
/// `x, y, z, w`: `x, y` generate the first `D8`, `z, w` the second factor.
#[derive(Debug, Clone)]
pub struct Extraspecial {
    pub group: Group,
    pub generators: [usize; 4],
}

pub fn extraspecial(kind: ExtraspecialKind) -> Result<Extraspecial, ConstructionError> {
    // D8: a^i b^j at i + 4j, so b = 4, ab = 5, central a^2 = 2.
    // Q8: x^i y^j at i + 4j, so x = 1, y = 4, central x^2 = 2.
    let d8 = generalized_dihedral(&[4])?;
    let (other, z, w) = match kind {
        ExtraspecialKind::Plus => (generalized_dihedral(&[4])?, 4, 5),
        ExtraspecialKind::Minus => (generalized_quaternion(2)?, 1, 4),
    };
    let cp = central_product(&d8, &other, 2, 2)?;
    let generators = [cp.image(4, 0), cp.image(5, 0), cp.image(0, z), cp.image(0, w)];
    Ok(Extraspecial {
        group: cp.group,
        generators,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Backend;

    fn commutator(g: &Group, a: usize, b: usize) -> usize {
        g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b)))
    }

    #[test]
    fn closed_form_orders() {
        let specs = [
            FamilySpec::Cyclic(7),
            FamilySpec::AbelianProduct(vec![2, 6]),
            FamilySpec::Dihedral(1),
            FamilySpec::Dihedral(9),
            FamilySpec::GeneralizedDihedral(vec![3, 3]),
            FamilySpec::GeneralizedQuaternion(2),
            FamilySpec::GeneralizedQuaternion(5),
            FamilySpec::Symmetric(1),
            FamilySpec::Symmetric(5),
            FamilySpec::Alternating(2),
            FamilySpec::Alternating(6),
            FamilySpec::Psl2(2),
            FamilySpec::Psl2(4),
            FamilySpec::Psl2(9),
            FamilySpec::Suzuki(2),
            FamilySpec::ExtraspecialPlus32,
            FamilySpec::ExtraspecialMinus32,
            FamilySpec::Frobenius20,
        ];
        for s in specs {
            let g = s.build().unwrap();
            assert_eq!(Some(g.order()), s.expected_order(), "{s}");
            g.verify_axioms(64, 2000, 7).unwrap();
        }
    }

    #[test]
    fn psl2_4_has_order_60() {
        assert_eq!(FamilySpec::Psl2(4).build().unwrap().order(), 60);
        let big = FamilySpec::Psl2(16).build().unwrap();
        assert_eq!(big.order(), 4080);
        assert_eq!(big.backend(), Backend::Permutation);
    }

    #[test]
    fn rejected_parameters() {
        assert!(matches!(
            FamilySpec::Suzuki(32).build(),
            Err(ConstructionError::UnsupportedParameter(_))
        ));
        assert!(matches!(
            FamilySpec::GeneralizedQuaternion(1).build(),
            Err(ConstructionError::BadParameter(_))
        ));
        assert!(matches!(
            FamilySpec::Psl2(6).build(),
            Err(ConstructionError::BadParameter(_))
        ));
        assert!(FamilySpec::Symmetric(7).build().is_err());
        assert!(FamilySpec::Dihedral(0).build().is_err());
    }

    #[test]
    fn dihedral_presentation() {
        // D10: a = 1, b = 5
        let g = FamilySpec::Dihedral(5).build().unwrap();
        let ab = g.mul(1, 5);
        assert_eq!(ab, 6);
        assert_eq!(g.mul(ab, ab), 0);
        for i in 0..5 {
            assert_eq!(g.order_of(i + 5), 2);
        }
        // b a b = a^-1
        assert_eq!(g.mul(g.mul(5, 1), 5), 4);
    }

    #[test]
    fn generalized_dihedral_of_cyclic_is_dihedral() {
        let a = FamilySpec::GeneralizedDihedral(vec![3]).build().unwrap();
        let b = FamilySpec::Dihedral(3).build().unwrap();
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(a.mul(x, y), b.mul(x, y));
            }
        }
    }

    #[test]
    fn generalized_dihedral_structure() {
        let g = FamilySpec::GeneralizedDihedral(vec![2, 6]).build().unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(g.center().len(), 4);
        for x in 12..24 {
            assert_eq!(g.order_of(x), 2);
        }
        // abelian iff A is elementary abelian 2-group
        assert!(FamilySpec::GeneralizedDihedral(vec![2, 2])
            .build()
            .unwrap()
            .is_abelian());
        assert!(!FamilySpec::GeneralizedDihedral(vec![2, 4])
            .build()
            .unwrap()
            .is_abelian());
    }

    #[test]
    fn quaternion_structure() {
        for m in 2..=8 {
            let g = FamilySpec::GeneralizedQuaternion(m).build().unwrap();
            let r = 2 * m;
            for i in 0..r {
                assert_eq!(g.order_of(i + r), 4);
            }
            assert_eq!(g.center().as_slice(), &[0, m]);
            assert!(!g.commute(1, r));
        }
    }

    #[test]
    fn direct_products() {
        let z2 = FamilySpec::Cyclic(2).build().unwrap();
        let z3 = FamilySpec::Cyclic(3).build().unwrap();
        let p = direct_product(&z2, &z3).unwrap();
        assert_eq!(p.order(), 6);
        assert!(p.is_abelian());
        let s3 = FamilySpec::Symmetric(3).build().unwrap();
        assert_eq!(direct_product(&s3, &s3).unwrap().order(), 36);
        let d6 = FamilySpec::Dihedral(3).build().unwrap();
        let d10 = FamilySpec::Dihedral(5).build().unwrap();
        let p = direct_product(&d6, &d10).unwrap();
        assert_eq!(p.order(), 60);
        // (h, k) * (h', k') = (hh', kk')
        assert_eq!(p.mul(10 + 7, 4 * 10 + 3), d6.mul(1, 4) * 10 + d10.mul(7, 3));
        let big = direct_product(
            &FamilySpec::Psl2(16).build().unwrap(),
            &FamilySpec::Cyclic(2).build().unwrap(),
        );
        assert!(big.is_err(), "no permutation data on the cyclic factor");
    }

    #[test]
    fn extraspecial_relations() {
        for kind in [ExtraspecialKind::Plus, ExtraspecialKind::Minus] {
            let e = extraspecial(kind).unwrap();
            let g = &e.group;
            let [x, y, z, w] = e.generators;
            assert_eq!(g.order(), 32);
            assert_eq!(g.center().len(), 2);
            let c = commutator(g, x, y);
            assert_eq!(c, commutator(g, z, w));
            assert_eq!(g.order_of(c), 2);
            assert!(g.center().contains(c));
            for (a, b) in [(x, z), (z, y), (y, w), (w, x)] {
                assert_eq!(commutator(g, a, b), 0);
            }
            assert_eq!(g.order_of(x), 2);
            assert_eq!(g.order_of(y), 2);
            let zw_order = if kind == ExtraspecialKind::Plus { 2 } else { 4 };
            assert_eq!(g.order_of(z), zw_order);
            assert_eq!(g.order_of(w), zw_order);
            if kind == ExtraspecialKind::Minus {
                assert_eq!(g.mul(z, z), c);
                assert_eq!(g.mul(w, w), c);
            }
        }
    }

    #[test]
    fn extraspecial_types_differ_in_involution_count() {
        let count = |k| {
            let g = extraspecial(k).unwrap().group;
            (1..32).filter(|&x| g.order_of(x) == 2).count()
        };
        let (plus, minus) = (count(ExtraspecialKind::Plus), count(ExtraspecialKind::Minus));
        assert!(plus > minus, "{plus} vs {minus}");
    }

    #[test]
    fn central_product_errors() {
        let d8 = FamilySpec::Dihedral(4).build().unwrap();
        let z4 = FamilySpec::Cyclic(4).build().unwrap();
        assert!(matches!(
            central_product(&d8, &d8, 4, 2),
            Err(ConstructionError::Group(GroupError::NotCentral(4)))
        ));
        assert!(matches!(
            central_product(&d8, &z4, 2, 1),
            Err(ConstructionError::Group(GroupError::OrderMismatch { .. }))
        ));
        // identifying trivial subgroups gives the direct product
        let cp = central_product(&d8, &z4, 0, 0).unwrap();
        let dp = direct_product(&d8, &z4).unwrap();
        assert_eq!(cp.group.order(), 32);
        for a in 0..32 {
            for b in 0..32 {
                assert_eq!(cp.group.mul(a, b), dp.mul(a, b));
            }
        }
    }

    #[test]
    fn affine_frobenius_groups() {
        let (g, h) = affine_frobenius(7, 3).unwrap();
        assert_eq!(g.order(), 21);
        assert_eq!(h.len(), 3);
        let (g, h) = affine_frobenius(9, 4).unwrap();
        assert_eq!(g.order(), 36);
        assert_eq!(h.len(), 4);
        assert!(affine_frobenius(7, 4).is_err());
    }

    #[test]
    fn spec_strings() {
        for s in ["sym:4", "gdih:2,6", "psl2:7", "extraspecial-", "sym:3*dihedral:5"] {
            let f: FamilySpec = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        assert_eq!("D12".parse::<FamilySpec>().unwrap(), FamilySpec::Dihedral(6));
        assert_eq!(
            "Q8".parse::<FamilySpec>().unwrap(),
            FamilySpec::GeneralizedQuaternion(2)
        );
        assert_eq!("A6".parse::<FamilySpec>().unwrap(), FamilySpec::Alternating(6));
        assert!("X9".parse::<FamilySpec>().is_err());
    }
}
