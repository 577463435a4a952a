//! Finite symplectic Z-modules of type `(d_1, ..., d_l)^2`, antisymplectic maps
//! and allowed maximal isotropic subgroups of `X ⊕ Y`.
//!
//! Elements are coordinate vectors `(λ_1, ..., λ_l, μ_1, ..., μ_l)` with the `i`-th
//! λ and μ coordinates taken modulo `d_i`. The pairing is kept additive: a rational
//! number in `[0, 1)` standing for the exponent of the root of unity
//! `exp(-2πi ω)`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{column_hermite, IntMatrix, Matrix};
use crate::polarization::PolarizationType;

pub type Element = Vec<i64>;

/// Default limit on `d_1 * ... * d_k` for [`enumerate_allowed`].
pub const DEFAULT_ENUMERATION_BOUND: u64 = 64;

/// Coordinates and pairing of a finite symplectic module.
pub trait SymplecticModule: Clone {
    /// Modulus of each coordinate.
    fn coordinate_orders(&self) -> Vec<u64>;

    /// `lcm` of the coordinate orders; pairings live in `(1/N) Z / Z`.
    fn exponent(&self) -> u64 {
        self.coordinate_orders().into_iter().fold(1, |a, b| a.lcm(&b))
    }

    /// `N * ω(x, y) mod N` for `N = self.exponent()`.
    fn scaled_pairing(&self, x: &[i64], y: &[i64]) -> i64;

    fn dimension(&self) -> usize {
        self.coordinate_orders().len()
    }

    fn order(&self) -> u128 {
        self.coordinate_orders().iter().map(|&o| o as u128).product()
    }

    fn check_element(&self, x: &[i64]) -> Result<()> {
        if x.len() != self.dimension() {
            return Err(Error::DimensionMismatch(format!(
                "element of length {} in a module of dimension {}",
                x.len(),
                self.dimension()
            )));
        }
        Ok(())
    }

    fn pairing(&self, x: &[i64], y: &[i64]) -> Result<Ratio<i64>> {
        self.check_element(x)?;
        self.check_element(y)?;
        let n = self.exponent() as i64;
        Ok(Ratio::new(self.scaled_pairing(x, y), n))
    }

    fn reduce(&self, x: &[i64]) -> Element {
        x.iter().zip(self.coordinate_orders()).map(|(&v, o)| v.rem_euclid(o as i64)).collect()
    }

    fn zero(&self) -> Element {
        vec![0; self.dimension()]
    }

    /// The standard generators (unit coordinate vectors).
    fn basis(&self) -> Vec<Element> {
        let n = self.dimension();
        (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                e
            })
            .collect()
    }

    fn add(&self, x: &[i64], y: &[i64]) -> Element {
        let s: Vec<i64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        self.reduce(&s)
    }

    fn scale(&self, c: i64, x: &[i64]) -> Element {
        let s: Vec<i64> = x.iter().map(|a| a * c).collect();
        self.reduce(&s)
    }
}

/// `(Z_{d_1} x ... x Z_{d_l})^2`; unit divisors are dropped on construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteSymplecticModule {
    orders: Vec<u64>,
}

impl FiniteSymplecticModule {
    pub fn new(ty: &PolarizationType) -> Self {
        FiniteSymplecticModule { orders: ty.nontrivial() }
    }

    /// Number `l` of divisors bigger than one.
    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn lambda(&self, i: usize) -> Element {
        let mut e = vec![0; 2 * self.rank()];
        e[i] = 1;
        e
    }

    pub fn mu(&self, i: usize) -> Element {
        let mut e = vec![0; 2 * self.rank()];
        e[self.rank() + i] = 1;
        e
    }

    /// Every element, in lexicographic coordinate order.
    pub fn elements(&self) -> Vec<Element> {
        all_vectors(&self.coordinate_orders())
    }
}

impl SymplecticModule for FiniteSymplecticModule {
    fn coordinate_orders(&self) -> Vec<u64> {
        self.orders.iter().chain(self.orders.iter()).copied().collect()
    }

    fn scaled_pairing(&self, x: &[i64], y: &[i64]) -> i64 {
        let l = self.rank();
        let n = self.exponent() as i64;
        let mut acc = 0i64;
        for i in 0..l {
            let d = self.orders[i] as i64;
            let term = (x[i] * y[l + i] - x[l + i] * y[i]).rem_euclid(d);
            acc = (acc + term * (n / d)) % n;
        }
        acc
    }
}

/// `X ⊕ Y` with `ω_X + ω_Y`; elements are `x` followed by `y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DirectSum {
    pub x: FiniteSymplecticModule,
    pub y: FiniteSymplecticModule,
}

impl DirectSum {
    pub fn new(x: FiniteSymplecticModule, y: FiniteSymplecticModule) -> Self {
        DirectSum { x, y }
    }

    /// `K(H_M) ⊕ K(H_N)` for types `D` and `D~`; both factors have the same nontrivial part.
    pub fn of_type(ty: &PolarizationType) -> Self {
        let m = FiniteSymplecticModule::new(ty);
        DirectSum { x: m.clone(), y: m }
    }

    pub fn split_point(&self) -> usize {
        self.x.dimension()
    }

    pub fn inject_x(&self, v: &[i64]) -> Element {
        let mut e = v.to_vec();
        e.extend(std::iter::repeat_n(0, self.y.dimension()));
        e
    }

    pub fn inject_y(&self, v: &[i64]) -> Element {
        let mut e = vec![0; self.x.dimension()];
        e.extend_from_slice(v);
        e
    }

    pub fn project_x(&self, v: &[i64]) -> Element {
        v[..self.split_point()].to_vec()
    }

    pub fn project_y(&self, v: &[i64]) -> Element {
        v[self.split_point()..].to_vec()
    }
}

impl SymplecticModule for DirectSum {
    fn coordinate_orders(&self) -> Vec<u64> {
        let mut o = self.x.coordinate_orders();
        o.extend(self.y.coordinate_orders());
        o
    }

    fn exponent(&self) -> u64 {
        self.x.exponent().lcm(&self.y.exponent())
    }

    fn scaled_pairing(&self, a: &[i64], b: &[i64]) -> i64 {
        let n = self.exponent() as i64;
        let s = self.split_point();
        let px = self.x.scaled_pairing(&a[..s], &b[..s]) * (n / self.x.exponent() as i64);
        let py = self.y.scaled_pairing(&a[s..], &b[s..]) * (n / self.y.exponent() as i64);
        (px + py) % n
    }
}

/// Subgroup of a finite module given by generators.
#[derive(Clone, Debug)]
pub struct FiniteSubgroup<M: SymplecticModule> {
    parent: M,
    generators: Vec<Element>,
}

impl<M: SymplecticModule> FiniteSubgroup<M> {
    pub fn new(parent: M, generators: Vec<Element>) -> Result<Self> {
        for g in &generators {
            parent.check_element(g)?;
        }
        let generators = generators.iter().map(|g| parent.reduce(g)).collect();
        Ok(FiniteSubgroup { parent, generators })
    }

    pub fn parent(&self) -> &M {
        &self.parent
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    /// Lattice `L ⊂ Z^n` of all lifts: generators plus `orders_i * e_i`.
    fn lift_lattice(&self) -> IntMatrix {
        lift_lattice(&self.parent.coordinate_orders(), &self.generators)
    }

    /// Canonical column-HNF basis of the lift lattice; equal iff the subgroups are equal.
    pub fn canonical_form(&self) -> IntMatrix {
        column_hermite(&self.lift_lattice()).basis()
    }

    /// Canonical generators: the columns of the canonical form reduced into the module,
    /// zero columns dropped.
    pub fn canonical_generators(&self) -> Vec<Element> {
        let basis = self.canonical_form();
        (0..basis.cols())
            .map(|j| {
                let col: Vec<i64> = basis.column(j).iter().map(to_i64).collect();
                self.parent.reduce(&col)
            })
            .filter(|v| v.iter().any(|&c| c != 0))
            .collect()
    }

    pub fn order(&self) -> u128 {
        subgroup_order(&self.parent.coordinate_orders(), &self.generators)
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        let basis = self.canonical_form();
        lattice_contains(&basis, &v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
    }

    pub fn is_isotropic(&self) -> bool {
        let g = &self.generators;
        (0..g.len()).all(|i| (i + 1..g.len()).all(|j| self.parent.scaled_pairing(&g[i], &g[j]) == 0))
    }

    /// All elements by closure under the generators.
    pub fn elements(&self) -> Vec<Element> {
        let mut seen: HashSet<Element> = HashSet::new();
        let zero = self.parent.zero();
        let mut frontier = vec![zero.clone()];
        seen.insert(zero);
        while let Some(x) = frontier.pop() {
            for g in &self.generators {
                let y = self.parent.add(&x, g);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        let mut out: Vec<Element> = seen.into_iter().collect();
        out.sort();
        out
    }

    pub fn same_subgroup(&self, other: &Self) -> bool {
        self.canonical_form() == other.canonical_form()
    }
}

impl FiniteSubgroup<DirectSum> {
    /// Order of the image under the projection to `X`.
    pub fn projection_x_order(&self) -> u128 {
        let gens: Vec<Element> = self.generators.iter().map(|g| self.parent.project_x(g)).collect();
        subgroup_order(&self.parent.x.coordinate_orders(), &gens)
    }

    pub fn projection_y_order(&self) -> u128 {
        let gens: Vec<Element> = self.generators.iter().map(|g| self.parent.project_y(g)).collect();
        subgroup_order(&self.parent.y.coordinate_orders(), &gens)
    }

    /// `K ∩ (X ⊕ 0) = 0`, i.e. the projection to `Y` is injective.
    pub fn meets_x_trivially(&self) -> bool {
        self.projection_y_order() == self.order()
    }

    pub fn meets_y_trivially(&self) -> bool {
        self.projection_x_order() == self.order()
    }

    /// Recovers `f` with `K = graph(f)` when `K` projects bijectively onto both factors.
    pub fn as_graph(&self) -> Option<AntisymplecticMap> {
        let sum = &self.parent;
        if self.order() != sum.x.order() || !self.meets_x_trivially() || !self.meets_y_trivially() {
            return None;
        }
        let elements = self.elements();
        let images = sum
            .x
            .basis()
            .iter()
            .map(|b| elements.iter().find(|k| sum.project_x(k) == *b).map(|k| sum.project_y(k)))
            .collect::<Option<Vec<_>>>()?;
        AntisymplecticMap::new(sum.x.clone(), sum.y.clone(), images).ok()
    }
}

fn to_i64(x: &BigInt) -> i64 {
    i64::try_from(x).expect("finite-module coordinate out of range")
}

fn lift_lattice(orders: &[u64], generators: &[Element]) -> IntMatrix {
    let n = orders.len();
    let gens = Matrix::from_fn(n, generators.len(), |i, j| BigInt::from(generators[j][i]));
    let rel = Matrix::diagonal(&orders.iter().map(|&o| BigInt::from(o)).collect::<Vec<_>>());
    gens.hstack(&rel)
}

fn subgroup_order(orders: &[u64], generators: &[Element]) -> u128 {
    let basis = column_hermite(&lift_lattice(orders, generators)).basis();
    // lower-triangular: the determinant is the product of the pivots
    let det: BigInt = (0..basis.cols()).map(|j| basis[(j, j)].clone()).product();
    let total: BigInt = orders.iter().map(|&o| BigInt::from(o)).product();
    let q = total / det;
    u128::try_from(q).expect("subgroup order out of range")
}

/// Membership in a full-rank lower-triangular lattice basis by forward substitution.
fn lattice_contains(basis: &IntMatrix, v: &[BigInt]) -> bool {
    let n = basis.rows();
    let mut rest: Vec<BigInt> = v.to_vec();
    for j in 0..n {
        let piv = &basis[(j, j)];
        if !(&rest[j] % piv).is_zero() {
            return false;
        }
        let c = &rest[j] / piv;
        for (i, r) in rest.iter_mut().enumerate().skip(j) {
            *r -= &c * &basis[(i, j)];
        }
    }
    rest.iter().all(Zero::is_zero)
}

fn all_vectors(orders: &[u64]) -> Vec<Element> {
    let mut out = vec![Vec::with_capacity(orders.len())];
    for &o in orders {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..o as i64).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

/// Z-linear map between modules of the same type, stored as the images of the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntisymplecticMap {
    domain: FiniteSymplecticModule,
    codomain: FiniteSymplecticModule,
    images: Vec<Element>,
}

impl AntisymplecticMap {
    /// Checks shapes and well-definedness, not the antisymplectic property.
    pub fn new(domain: FiniteSymplecticModule, codomain: FiniteSymplecticModule, images: Vec<Element>) -> Result<Self> {
        if domain.orders() != codomain.orders() {
            return Err(Error::TypeMismatch);
        }
        if images.len() != domain.dimension() {
            return Err(Error::DimensionMismatch(format!(
                "{} basis images for a module of dimension {}",
                images.len(),
                domain.dimension()
            )));
        }
        for img in &images {
            codomain.check_element(img)?;
        }
        let images: Vec<Element> = images.iter().map(|v| codomain.reduce(v)).collect();
        for (img, o) in images.iter().zip(domain.coordinate_orders()) {
            if codomain.scale(o as i64, img).iter().any(|&c| c != 0) {
                return Err(Error::NotWellDefined);
            }
        }
        Ok(AntisymplecticMap { domain, codomain, images })
    }

    pub fn domain(&self) -> &FiniteSymplecticModule {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteSymplecticModule {
        &self.codomain
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    /// Integer matrix whose columns are the basis images.
    pub fn matrix(&self) -> IntMatrix {
        let n = self.domain.dimension();
        Matrix::from_fn(n, n, |i, j| BigInt::from(self.images[j][i]))
    }

    pub fn apply(&self, x: &[i64]) -> Element {
        let mut out = self.codomain.zero();
        for (c, img) in x.iter().zip(&self.images) {
            out = self.codomain.add(&out, &self.codomain.scale(*c, img));
        }
        out
    }

    /// `ω_X(x, y) = -ω_Y(f x, f y)` on all basis pairs.
    pub fn is_antisymplectic(&self) -> bool {
        let basis = self.domain.basis();
        let n = self.domain.exponent() as i64;
        (0..basis.len()).all(|i| {
            (i + 1..basis.len()).all(|j| {
                let lhs = self.domain.scaled_pairing(&basis[i], &basis[j]);
                let rhs = self.codomain.scaled_pairing(&self.images[i], &self.images[j]);
                (lhs + rhs) % n == 0
            })
        })
    }

    /// `{(b, f b)}` inside `X ⊕ Y`.
    pub fn graph_subgroup(&self) -> Result<FiniteSubgroup<DirectSum>> {
        if !self.is_antisymplectic() {
            return Err(Error::NotAntisymplectic);
        }
        let sum = DirectSum::new(self.domain.clone(), self.codomain.clone());
        let gens = self.domain.basis().iter().zip(&self.images).map(|(b, fb)| [b.clone(), fb.clone()].concat()).collect();
        FiniteSubgroup::new(sum, gens)
    }

    /// `self⁻¹ ∘ other` as a map `X -> X`; requires the bijectivity guaranteed for antisymplectic maps.
    pub fn inverse_compose(&self, other: &AntisymplecticMap) -> Option<AntisymplecticMap> {
        let inverse: Vec<(Element, Element)> =
            self.domain.elements().into_iter().map(|x| (self.apply(&x), x)).collect();
        let images = other
            .images
            .iter()
            .map(|y| inverse.iter().find(|(fx, _)| fx == y).map(|(_, x)| x.clone()))
            .collect::<Option<Vec<_>>>()?;
        AntisymplecticMap::new(self.domain.clone(), self.domain.clone(), images).ok()
    }

    /// True when `ω(s x, s y) = ω(x, y)` on basis pairs (for endomorphisms of one module).
    pub fn preserves_pairing(&self) -> bool {
        let basis = self.domain.basis();
        (0..basis.len()).all(|i| {
            (i + 1..basis.len()).all(|j| {
                self.domain.scaled_pairing(&basis[i], &basis[j])
                    == self.codomain.scaled_pairing(&self.images[i], &self.images[j])
            })
        })
    }
}

/// Three-way verdict of [`classify_subgroup`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubgroupClass {
    Allowed,
    IsotropicNotAllowed,
    NotIsotropic,
}

/// Allowed means: isotropic, of order `(d_1 ... d_k)^2`, meeting both factors in `{0}`.
pub fn classify_subgroup(k: &FiniteSubgroup<DirectSum>) -> SubgroupClass {
    if !k.is_isotropic() {
        return SubgroupClass::NotIsotropic;
    }
    let maximal = k.order() == k.parent().x.order();
    if maximal && k.meets_x_trivially() && k.meets_y_trivially() {
        SubgroupClass::Allowed
    } else {
        SubgroupClass::IsotropicNotAllowed
    }
}

/// Generated by `λ_i^M + λ_i^N` and `μ_i^M - μ_i^N`.
pub fn standard_allowed(ty: &PolarizationType) -> FiniteSubgroup<DirectSum> {
    let sum = DirectSum::of_type(ty);
    let l = sum.x.rank();
    let mut gens = Vec::with_capacity(2 * l);
    for i in 0..l {
        gens.push([sum.x.lambda(i), sum.y.lambda(i)].concat());
    }
    for i in 0..l {
        gens.push([sum.x.mu(i), sum.y.mu(i).iter().map(|c| -c).collect()].concat());
    }
    FiniteSubgroup::new(sum, gens).expect("standard generators have the right length")
}

/// All antisymplectic maps `K(H) -> K(H)` by backtracking over basis images.
pub fn antisymplectic_maps(module: &FiniteSymplecticModule) -> Vec<AntisymplecticMap> {
    let orders = module.coordinate_orders();
    let basis = module.basis();
    let n = module.exponent() as i64;
    let candidates: Vec<Vec<Element>> = orders
        .iter()
        .map(|&o| module.elements().into_iter().filter(|y| module.scale(o as i64, y).iter().all(|&c| c == 0)).collect())
        .collect();

    let mut out = Vec::new();
    let mut chosen: Vec<Element> = Vec::with_capacity(basis.len());
    fn search(
        module: &FiniteSymplecticModule,
        basis: &[Element],
        candidates: &[Vec<Element>],
        n: i64,
        chosen: &mut Vec<Element>,
        out: &mut Vec<AntisymplecticMap>,
    ) {
        let j = chosen.len();
        if j == basis.len() {
            out.push(AntisymplecticMap {
                domain: module.clone(),
                codomain: module.clone(),
                images: chosen.clone(),
            });
            return;
        }
        for y in &candidates[j] {
            let ok = (0..j).all(|i| {
                let lhs = module.scaled_pairing(&basis[i], &basis[j]);
                let rhs = module.scaled_pairing(&chosen[i], y);
                (lhs + rhs) % n == 0
            });
            if ok {
                chosen.push(y.clone());
                search(module, basis, candidates, n, chosen, out);
                chosen.pop();
            }
        }
    }
    search(module, &basis, &candidates, n, &mut chosen, &mut out);
    out
}

/// Every allowed subgroup of `K(H_M) ⊕ K(H_N)` for type `D`, each exactly once.
pub fn enumerate_allowed(ty: &PolarizationType) -> Result<Vec<FiniteSubgroup<DirectSum>>> {
    enumerate_allowed_bounded(ty, DEFAULT_ENUMERATION_BOUND)
}

pub fn enumerate_allowed_bounded(ty: &PolarizationType, bound: u64) -> Result<Vec<FiniteSubgroup<DirectSum>>> {
    let product = ty.product();
    if product > bound {
        return Err(Error::BoundExceeded { product, bound });
    }
    let module = FiniteSymplecticModule::new(ty);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for f in antisymplectic_maps(&module) {
        let k = f.graph_subgroup()?;
        if seen.insert(k.canonical_form()) {
            out.push(k);
        }
    }
    Ok(out)
}

/// `|K(H)| = (d_1 ... d_k)^2`.
pub fn kernel_order(ty: &PolarizationType) -> u128 {
    ty.divisors().iter().map(|&d| (d as u128) * (d as u128)).product()
}
