//! Finite groupoids, their nerves and cochains, principal bundles in cocycle
//! form, transformation groupoids, generalized homomorphisms and holonomy.
//!
//! Conventions: `β` is the source and `α` the target. `compose(a, b)` is `ab`,
//! defined when `β(a) = α(b)`. A point of the nerve at level `n ≥ 1` is a tuple
//! `(γ_1, …, γ_n)` with `β(γ_i) = α(γ_{i+1})`; at level 0 it is an object.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num::{One, Zero};

use crate::algebra::Rational;
use crate::cohomology::TotalComplex;
use crate::error::{Error, Result};

pub type Object = usize;
pub type Arrow = usize;

fn err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Groupoid(msg.into()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates the group axioms exhaustively.
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if n == 0 || table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return err("group table must be a square table of element indices");
        }
        let Some(identity) = (0..n).find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x)) else {
            return err("group has no identity");
        };
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return err(format!("multiplication is not associative at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            match (0..n).find(|&b| table[a][b] == identity) {
                Some(b) => inverse.push(b),
                None => return err(format!("element {a} has no inverse")),
            }
        }
        Ok(FiniteGroup { names, table, identity, inverse })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `ℤ/n` with elements `0..n`.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::new((0..n).map(|k| k.to_string()).collect(), table).expect("cyclic groups are groups")
    }

    /// The symmetric group on `k` letters, elements listed in lexicographic order
    /// of the permutations.
    pub fn symmetric(k: usize) -> Self {
        let mut perms: Vec<Vec<usize>> = vec![(0..k).collect()];
        let mut i = 0;
        while i < perms.len() {
            let p = perms[i].clone();
            for a in 0..k {
                for b in a + 1..k {
                    let mut q = p.clone();
                    q.swap(a, b);
                    if !perms.contains(&q) {
                        perms.push(q);
                    }
                }
            }
            i += 1;
        }
        perms.sort();
        let index: HashMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        // (pq)(x) = p(q(x))
        let table = perms
            .iter()
            .map(|p| perms.iter().map(|q| index[&q.iter().map(|&x| p[x]).collect::<Vec<_>>()]).collect())
            .collect();
        let names = perms.iter().map(|p| p.iter().map(|x| x.to_string()).collect::<String>()).collect();
        Self::new(names, table).expect("permutations form a group")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowRecord {
    pub id: String,
    pub src: Object,
    pub tgt: Object,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    objects: Vec<String>,
    arrows: Vec<ArrowRecord>,
    /// `compose[a * n + b] = ab` for composable pairs
    compose: Vec<Option<Arrow>>,
    identity: Vec<Arrow>,
    inverse: Vec<Arrow>,
}

impl FiniteGroupoid {
    /// Validates the groupoid axioms exhaustively.
    pub fn new(
        objects: Vec<String>,
        arrows: Vec<ArrowRecord>,
        compose: Vec<Option<Arrow>>,
        identity: Vec<Arrow>,
        inverse: Vec<Arrow>,
    ) -> Result<Self> {
        let g = FiniteGroupoid { objects, arrows, compose, identity, inverse };
        g.validate()?;
        Ok(g)
    }

    /// Builds the composition, identity and inverse tables from a partial
    /// multiplication function.
    pub fn from_fn(objects: Vec<String>, arrows: Vec<ArrowRecord>, mul: impl Fn(Arrow, Arrow) -> Arrow) -> Result<Self> {
        let n = arrows.len();
        let mut compose = vec![None; n * n];
        for a in 0..n {
            for b in 0..n {
                if arrows[a].src == arrows[b].tgt {
                    compose[a * n + b] = Some(mul(a, b));
                }
            }
        }
        let mut identity = Vec::with_capacity(objects.len());
        for x in 0..objects.len() {
            let found = (0..n).find(|&e| {
                arrows[e].src == x
                    && arrows[e].tgt == x
                    && (0..n).all(|a| {
                        (arrows[a].src != x || compose[a * n + e] == Some(a)) && (arrows[a].tgt != x || compose[e * n + a] == Some(a))
                    })
            });
            match found {
                Some(e) => identity.push(e),
                None => return err(format!("object {} has no identity arrow", objects[x])),
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let (s, t) = (arrows[a].src, arrows[a].tgt);
            match (0..n).find(|&b| compose[a * n + b] == Some(identity[t]) && compose[b * n + a] == Some(identity[s])) {
                Some(b) => inverse.push(b),
                None => return err(format!("arrow {} has no inverse", arrows[a].id)),
            }
        }
        Self::new(objects, arrows, compose, identity, inverse)
    }

    /// A group as a groupoid with one object.
    pub fn from_group(g: &FiniteGroup) -> Self {
        let arrows = g.names.iter().map(|n| ArrowRecord { id: n.clone(), src: 0, tgt: 0 }).collect();
        Self::from_fn(vec!["*".into()], arrows, |a, b| g.mul(a, b)).expect("groups are groupoids")
    }

    /// The pair groupoid on `k` objects: one arrow `(i, j)` from `j` to `i`.
    pub fn pair(k: usize) -> Self {
        let objects = (0..k).map(|i| format!("x{i}")).collect();
        let mut arrows = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                arrows.push(ArrowRecord { id: format!("({i},{j})"), src: j, tgt: i });
            }
        }
        // (i, j)(j, l) = (i, l)
        Self::from_fn(objects, arrows, |a, b| (a / k) * k + b % k).expect("pair groupoids are groupoids")
    }

    /// Only identity arrows.
    pub fn discrete(k: usize) -> Self {
        let objects = (0..k).map(|i| format!("x{i}")).collect();
        let arrows = (0..k).map(|i| ArrowRecord { id: format!("1_x{i}"), src: i, tgt: i }).collect();
        Self::from_fn(objects, arrows, |a, _| a).expect("discrete groupoids are groupoids")
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[ArrowRecord] {
        &self.arrows
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn n_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn source(&self, a: Arrow) -> Object {
        self.arrows[a].src
    }

    pub fn target(&self, a: Arrow) -> Object {
        self.arrows[a].tgt
    }

    pub fn identity(&self, x: Object) -> Arrow {
        self.identity[x]
    }

    pub fn inverse(&self, a: Arrow) -> Arrow {
        self.inverse[a]
    }

    pub fn compose_table(&self) -> &[Option<Arrow>] {
        &self.compose
    }

    pub fn identities(&self) -> &[Arrow] {
        &self.identity
    }

    pub fn inverses(&self) -> &[Arrow] {
        &self.inverse
    }

    /// `ab`, or `None` unless `β(a) = α(b)`.
    pub fn compose(&self, a: Arrow, b: Arrow) -> Option<Arrow> {
        self.compose[a * self.arrows.len() + b]
    }

    fn mul(&self, a: Arrow, b: Arrow) -> Arrow {
        self.compose(a, b).expect("composable pair")
    }

    pub fn object_index(&self, name: &str) -> Option<Object> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn arrow_index(&self, id: &str) -> Option<Arrow> {
        self.arrows.iter().position(|a| a.id == id)
    }

    /// Category axioms, invertibility, and totality of composition on
    /// composable pairs, checked exhaustively.
    pub fn validate(&self) -> Result<()> {
        let n = self.arrows.len();
        let k = self.objects.len();
        if self.compose.len() != n * n || self.identity.len() != k || self.inverse.len() != n {
            return err("table sizes do not match the numbers of objects and arrows");
        }
        for (i, a) in self.arrows.iter().enumerate() {
            if a.src >= k || a.tgt >= k {
                return err(format!("arrow {} has an unknown endpoint", a.id));
            }
            if self.inverse[i] >= n {
                return err(format!("inverse of {} is out of range", a.id));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let composable = self.source(a) == self.target(b);
                match (composable, self.compose(a, b)) {
                    (true, None) => return err(format!("{} {} is composable but has no product", self.arrows[a].id, self.arrows[b].id)),
                    (false, Some(_)) => return err(format!("{} {} is not composable but has a product", self.arrows[a].id, self.arrows[b].id)),
                    (true, Some(c)) => {
                        if c >= n || self.source(c) != self.source(b) || self.target(c) != self.target(a) {
                            return err(format!("product of {} and {} has wrong endpoints", self.arrows[a].id, self.arrows[b].id));
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let Some(ab) = self.compose(a, b) else { continue };
                for c in 0..n {
                    let Some(bc) = self.compose(b, c) else { continue };
                    if self.compose(ab, c) != self.compose(a, bc) {
                        return err(format!(
                            "composition is not associative at ({}, {}, {})",
                            self.arrows[a].id, self.arrows[b].id, self.arrows[c].id
                        ));
                    }
                }
            }
        }
        for x in 0..k {
            let e = self.identity[x];
            if e >= n || self.source(e) != x || self.target(e) != x {
                return err(format!("identity of {} is not a loop at it", self.objects[x]));
            }
            for a in 0..n {
                if (self.source(a) == x && self.compose(a, e) != Some(a)) || (self.target(a) == x && self.compose(e, a) != Some(a)) {
                    return err(format!("identity of {} is not neutral", self.objects[x]));
                }
            }
        }
        for a in 0..n {
            let b = self.inverse[a];
            if self.compose(a, b) != Some(self.identity[self.target(a)]) || self.compose(b, a) != Some(self.identity[self.source(a)]) {
                return err(format!("inverse of {} is wrong", self.arrows[a].id));
            }
        }
        Ok(())
    }

    /// Loops at `x`.
    pub fn vertex_group(&self, x: Object) -> Vec<Arrow> {
        (0..self.arrows.len()).filter(|&a| self.source(a) == x && self.target(a) == x).collect()
    }

    /// Connected components as lists of objects.
    pub fn components(&self) -> Vec<Vec<Object>> {
        let mut comp = vec![usize::MAX; self.objects.len()];
        let mut out = Vec::new();
        for start in 0..self.objects.len() {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for a in &self.arrows {
                    for (u, v) in [(a.src, a.tgt), (a.tgt, a.src)] {
                        if u == x && comp[v] == usize::MAX {
                            comp[v] = id;
                            members.push(v);
                            queue.push_back(v);
                        }
                    }
                }
            }
            members.sort();
            out.push(members);
        }
        out
    }
}

/// A functor between groupoids given on objects and arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictHom {
    pub on_objects: Vec<Object>,
    pub on_arrows: Vec<Arrow>,
}

impl StrictHom {
    pub fn check(&self, source: &FiniteGroupoid, target: &FiniteGroupoid) -> Result<()> {
        if self.on_objects.len() != source.n_objects() || self.on_arrows.len() != source.n_arrows() {
            return err("homomorphism tables have the wrong size");
        }
        for a in 0..source.n_arrows() {
            let fa = self.on_arrows[a];
            if target.source(fa) != self.on_objects[source.source(a)] || target.target(fa) != self.on_objects[source.target(a)] {
                return err(format!("homomorphism does not respect the endpoints of {}", source.arrows[a].id));
            }
            for b in 0..source.n_arrows() {
                if let Some(ab) = source.compose(a, b) {
                    if target.compose(fa, self.on_arrows[b]) != Some(self.on_arrows[ab]) {
                        return err(format!(
                            "homomorphism does not respect the product of {} and {}",
                            source.arrows[a].id, source.arrows[b].id
                        ));
                    }
                }
            }
        }
        for x in 0..source.n_objects() {
            if self.on_arrows[source.identity(x)] != target.identity(self.on_objects[x]) {
                return err("homomorphism does not send identities to identities");
            }
        }
        Ok(())
    }
}

/// The nerve up to a fixed level, with face and degeneracy maps as index tables.
#[derive(Clone, Debug)]
pub struct Nerve {
    /// `levels[0]` holds one-element vectors `[x]`; `levels[n]` the composable tuples
    levels: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
    /// `faces[n][i][p]`: `ε_i^n` on point `p` of level `n`
    faces: Vec<Vec<Vec<usize>>>,
    /// `degeneracies[n][i][p]`: `η_i^n` on point `p` of level `n`, into level `n + 1`
    degeneracies: Vec<Vec<Vec<usize>>>,
}

pub fn nerve(g: &FiniteGroupoid, max_level: usize) -> Nerve {
    let mut levels: Vec<Vec<Vec<usize>>> = vec![(0..g.n_objects()).map(|x| vec![x]).collect()];
    if max_level >= 1 {
        levels.push((0..g.n_arrows()).map(|a| vec![a]).collect());
    }
    for _ in 2..=max_level {
        let prev = levels.last().unwrap();
        let mut next = Vec::new();
        for t in prev {
            let last = *t.last().unwrap();
            for a in 0..g.n_arrows() {
                if g.source(last) == g.target(a) {
                    let mut u = t.clone();
                    u.push(a);
                    next.push(u);
                }
            }
        }
        levels.push(next);
    }
    let index: Vec<HashMap<Vec<usize>, usize>> =
        levels.iter().map(|l| l.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect()).collect();

    let mut faces = vec![Vec::new()];
    for n in 1..=max_level {
        let mut per_i = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let map = levels[n]
                .iter()
                .map(|t| {
                    let image: Vec<usize> = if n == 1 {
                        vec![if i == 0 { g.source(t[0]) } else { g.target(t[0]) }]
                    } else if i == 0 {
                        t[1..].to_vec()
                    } else if i == n {
                        t[..n - 1].to_vec()
                    } else {
                        let mut u = t[..i - 1].to_vec();
                        u.push(g.mul(t[i - 1], t[i]));
                        u.extend_from_slice(&t[i + 1..]);
                        u
                    };
                    index[n - 1][&image]
                })
                .collect();
            per_i.push(map);
        }
        faces.push(per_i);
    }

    let mut degeneracies = Vec::new();
    for n in 0..max_level {
        let mut per_i = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let map = levels[n]
                .iter()
                .map(|t| {
                    let image: Vec<usize> = if n == 0 {
                        vec![g.identity(t[0])]
                    } else if i == 0 {
                        let mut u = vec![g.identity(g.target(t[0]))];
                        u.extend_from_slice(t);
                        u
                    } else {
                        let mut u = t[..i].to_vec();
                        u.push(g.identity(g.source(t[i - 1])));
                        u.extend_from_slice(&t[i..]);
                        u
                    };
                    index[n + 1][&image]
                })
                .collect();
            per_i.push(map);
        }
        degeneracies.push(per_i);
    }
    Nerve { levels, index, faces, degeneracies }
}

impl Nerve {
    pub fn max_level(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn size(&self, n: usize) -> usize {
        self.levels[n].len()
    }

    pub fn point(&self, n: usize, p: usize) -> &[usize] {
        &self.levels[n][p]
    }

    pub fn lookup(&self, n: usize, t: &[usize]) -> Option<usize> {
        self.index[n].get(t).copied()
    }

    /// `ε_i^n : Γ_n → Γ_{n-1}`.
    pub fn face(&self, n: usize, i: usize, p: usize) -> usize {
        self.faces[n][i][p]
    }

    /// `η_i^n : Γ_n → Γ_{n+1}`.
    pub fn degeneracy(&self, n: usize, i: usize, p: usize) -> usize {
        self.degeneracies[n][i][p]
    }

    /// Checks every simplicial identity on every point, levels `≤ max_level`.
    pub fn check_identities(&self) -> Result<()> {
        let top = self.max_level();
        let fail = |what: String| Err(Error::CheckFailed(what));
        for n in 2..=top {
            for p in 0..self.size(n) {
                for j in 1..=n {
                    for i in 0..j {
                        if self.face(n - 1, i, self.face(n, j, p)) != self.face(n - 1, j - 1, self.face(n, i, p)) {
                            return fail(format!("ε_{i} ε_{j} ≠ ε_{} ε_{i} at level {n}", j - 1));
                        }
                    }
                }
            }
        }
        for n in 0..top {
            for p in 0..self.size(n) {
                for j in 0..=n {
                    let s = self.degeneracy(n, j, p);
                    for i in 0..=n + 1 {
                        let lhs = self.face(n + 1, i, s);
                        let ok = if i == j || i == j + 1 {
                            lhs == p
                        } else if i < j {
                            lhs == self.degeneracy(n - 1, j - 1, self.face(n, i, p))
                        } else {
                            lhs == self.degeneracy(n - 1, j, self.face(n, i - 1, p))
                        };
                        if !ok {
                            return fail(format!("ε_{i} η_{j} identity fails at level {n}"));
                        }
                    }
                    if n + 1 < top {
                        for i in 0..=j {
                            if self.degeneracy(n + 1, i, s) != self.degeneracy(n + 1, j + 1, self.degeneracy(n, i, p)) {
                                return fail(format!("η_{i} η_{j} identity fails at level {n}"));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Composite of `count` last faces: `Γ_{n} → Γ_{n-count}`.
    fn back_faces(&self, n: usize, count: usize, mut p: usize) -> usize {
        for l in (n - count + 1..=n).rev() {
            p = self.face(l, l, p);
        }
        p
    }

    /// Composite of `count` zeroth faces.
    fn front_faces(&self, n: usize, count: usize, mut p: usize) -> usize {
        for l in (n - count + 1..=n).rev() {
            p = self.face(l, 0, p);
        }
        p
    }
}

/// A rational function on `Γ_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub level: usize,
    pub values: Vec<Rational>,
}

impl Cochain {
    pub fn zero(nerve: &Nerve, level: usize) -> Self {
        Cochain { level, values: vec![Rational::zero(); nerve.size(level)] }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.level, other.level, "cochains of different levels");
        Cochain { level: self.level, values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Cochain {
        Cochain { level: self.level, values: self.values.iter().map(|v| v * c).collect() }
    }
}

/// `∂c = Σ_i (-1)^i c ∘ ε_i`.
pub fn coboundary(nerve: &Nerve, c: &Cochain) -> Cochain {
    let n = c.level + 1;
    let values = (0..nerve.size(n))
        .map(|p| {
            let mut v = Rational::zero();
            for i in 0..=n {
                let x = &c.values[nerve.face(n, i, p)];
                if i % 2 == 0 {
                    v += x;
                } else {
                    v -= x;
                }
            }
            v
        })
        .collect();
    Cochain { level: n, values }
}

/// `(a ∨ b)(γ) = a(front part of γ) · b(back part of γ)`, through the same
/// face composites as for forms. Functions have form degree 0, so no sign.
pub fn cup(nerve: &Nerve, a: &Cochain, b: &Cochain) -> Cochain {
    let (m, n) = (a.level, b.level);
    let values = (0..nerve.size(m + n))
        .map(|p| &a.values[nerve.back_faces(m + n, n, p)] * &b.values[nerve.front_faces(m + n, m, p)])
        .collect();
    Cochain { level: m + n, values }
}

/// The cochain complex of a finite groupoid through a level bound.
pub struct GroupoidComplex<'a> {
    pub nerve: &'a Nerve,
}

impl TotalComplex for GroupoidComplex<'_> {
    type Cochain = Cochain;
    type Key = (usize, usize);

    fn basis(&self, degree: u32) -> Result<Vec<Cochain>> {
        let n = degree as usize;
        if n + 1 > self.nerve.max_level() {
            return Err(Error::WindowIncomplete(format!("degree {n} needs the nerve through level {}", n + 1)));
        }
        Ok((0..self.nerve.size(n))
            .map(|p| {
                let mut c = Cochain::zero(self.nerve, n);
                c.values[p] = Rational::one();
                c
            })
            .collect())
    }

    fn delta(&self, x: &Cochain) -> Cochain {
        coboundary(self.nerve, x)
    }

    fn coordinates(&self, x: &Cochain) -> Vec<((usize, usize), Rational)> {
        x.values.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(p, v)| ((x.level, p), v.clone())).collect()
    }

    fn combine(&self, coeffs: &[Rational], basis: &[Cochain]) -> Cochain {
        let mut out = Cochain::zero(self.nerve, basis.first().map_or(0, |b| b.level));
        for (c, b) in coeffs.iter().zip(basis) {
            out = out.add(&b.scale(c));
        }
        out
    }
}

/// A principal bundle in trivialized form: a functor `ψ : Γ → G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleCocycle {
    pub base: FiniteGroupoid,
    pub group: FiniteGroup,
    pub psi: Vec<usize>,
}

impl BundleCocycle {
    pub fn new(base: FiniteGroupoid, group: FiniteGroup, psi: Vec<usize>) -> Result<Self> {
        let b = BundleCocycle { base, group, psi };
        b.validate()?;
        Ok(b)
    }

    pub fn trivial(base: &FiniteGroupoid, group: &FiniteGroup) -> Self {
        BundleCocycle { base: base.clone(), group: group.clone(), psi: vec![group.identity(); base.n_arrows()] }
    }

    pub fn validate(&self) -> Result<()> {
        let g = &self.base;
        if self.psi.len() != g.n_arrows() || self.psi.iter().any(|&x| x >= self.group.order()) {
            return err("cocycle must assign a group element to every arrow");
        }
        for x in 0..g.n_objects() {
            if self.psi[g.identity(x)] != self.group.identity() {
                return err(format!("cocycle is not trivial on the identity of {}", g.objects[x]));
            }
        }
        for a in 0..g.n_arrows() {
            for b in 0..g.n_arrows() {
                if let Some(ab) = g.compose(a, b) {
                    if self.psi[ab] != self.group.mul(self.psi[a], self.psi[b]) {
                        return err(format!("cocycle is not multiplicative on ({}, {})", g.arrows[a].id, g.arrows[b].id));
                    }
                }
            }
        }
        Ok(())
    }

    /// A fiberwise gauge transformation `h : Γ_0 → G` with
    /// `other.ψ(γ) = h(α γ) ψ(γ) h(β γ)^{-1}`, if one exists.
    pub fn isomorphism_to(&self, other: &BundleCocycle) -> Option<Vec<usize>> {
        if self.base != other.base || self.group != other.group {
            return None;
        }
        let g = &self.base;
        let grp = &self.group;
        let mut h = vec![usize::MAX; g.n_objects()];
        for comp in g.components() {
            let root = comp[0];
            let found = (0..grp.order()).find_map(|h0| {
                let mut trial = h.clone();
                trial[root] = h0;
                let mut queue = VecDeque::from([root]);
                while let Some(x) = queue.pop_front() {
                    for a in 0..g.n_arrows() {
                        if g.source(a) != x {
                            continue;
                        }
                        // h(α a) = other(a) h(x) self(a)^{-1}
                        let want = grp.mul(grp.mul(other.psi[a], trial[x]), grp.inv(self.psi[a]));
                        let y = g.target(a);
                        if trial[y] == usize::MAX {
                            trial[y] = want;
                            queue.push_back(y);
                        } else if trial[y] != want {
                            return None;
                        }
                    }
                }
                Some(trial)
            })?;
            h = found;
        }
        Some(h)
    }
}

/// The action groupoid `Q = Γ ×_{β, Γ_0, π} P ⇉ P` of a bundle, with
/// `P = Γ_0 × G` and `γ·(x, g) = (α γ, ψ(γ) g)`.
#[derive(Clone, Debug)]
pub struct TransformationGroupoid {
    pub groupoid: FiniteGroupoid,
    /// Q-arrow `(γ, p)` and P-point `p = (x, g)` as index pairs
    pub arrow_parts: Vec<(Arrow, usize)>,
    pub points: Vec<(Object, usize)>,
    pub projection: StrictHom,
}

impl TransformationGroupoid {
    fn point_index(&self, x: Object, g: usize, order: usize) -> usize {
        x * order + g
    }

    /// `(γ, p)·h = (γ, p h)`.
    pub fn act_arrow(&self, q: Arrow, h: usize, group: &FiniteGroup) -> Arrow {
        let (gamma, p) = self.arrow_parts[q];
        let (x, g) = self.points[p];
        let p2 = self.point_index(x, group.mul(g, h), group.order());
        self.arrow_parts.iter().position(|&(a, b)| a == gamma && b == p2).expect("action stays in Q")
    }

    pub fn act_point(&self, p: usize, h: usize, group: &FiniteGroup) -> usize {
        let (x, g) = self.points[p];
        self.point_index(x, group.mul(g, h), group.order())
    }

    /// The right G-action commutes with source, target and composition.
    pub fn check_equivariance(&self, group: &FiniteGroup) -> Result<()> {
        let q = &self.groupoid;
        for h in 0..group.order() {
            for a in 0..q.n_arrows() {
                let ah = self.act_arrow(a, h, group);
                if q.source(ah) != self.act_point(q.source(a), h, group) || q.target(ah) != self.act_point(q.target(a), h, group) {
                    return err("G-action does not commute with source and target");
                }
                for b in 0..q.n_arrows() {
                    if let Some(ab) = q.compose(a, b) {
                        if q.compose(ah, self.act_arrow(b, h, group)) != Some(self.act_arrow(ab, h, group)) {
                            return err("G-action does not commute with composition");
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

pub fn transformation_groupoid(b: &BundleCocycle) -> Result<TransformationGroupoid> {
    let g = &b.base;
    let grp = &b.group;
    let order = grp.order();
    let points: Vec<(Object, usize)> = (0..g.n_objects()).flat_map(|x| (0..order).map(move |h| (x, h))).collect();
    let pidx = |x: Object, h: usize| x * order + h;
    let act = |gamma: Arrow, p: usize| -> usize {
        let (_, h) = points[p];
        pidx(g.target(gamma), grp.mul(b.psi[gamma], h))
    };
    let mut parts = Vec::new();
    for gamma in 0..g.n_arrows() {
        for h in 0..order {
            parts.push((gamma, pidx(g.source(gamma), h)));
        }
    }
    let names: Vec<String> = points.iter().map(|&(x, h)| format!("({},{})", g.objects[x], grp.names[h])).collect();
    let arrows: Vec<ArrowRecord> = parts
        .iter()
        .map(|&(gamma, p)| ArrowRecord { id: format!("({},{})", g.arrows[gamma].id, names[p]), src: p, tgt: act(gamma, p) })
        .collect();
    let lookup: HashMap<(Arrow, usize), Arrow> = parts.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    // (γ1, q)(γ2, p) = (γ1 γ2, p)
    let groupoid = FiniteGroupoid::from_fn(names, arrows, |a, bb| {
        let (g1, _) = parts[a];
        let (g2, p) = parts[bb];
        lookup[&(g.mul(g1, g2), p)]
    })?;
    let projection = StrictHom {
        on_objects: points.iter().map(|&(x, _)| x).collect(),
        on_arrows: parts.iter().map(|&(gamma, _)| gamma).collect(),
    };
    projection.check(&groupoid, g)?;
    Ok(TransformationGroupoid { groupoid, arrow_parts: parts, points, projection })
}

/// A generalized homomorphism from `Γ'` to `Γ`: a finite set `Z` with
/// `τ : Z → Γ'_0`, `σ : Z → Γ_0`, a left `Γ'`-action and a right
/// `Γ`-action, principal for `Γ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedHom {
    pub source: FiniteGroupoid,
    pub target: FiniteGroupoid,
    pub points: Vec<String>,
    pub tau: Vec<Object>,
    pub sigma: Vec<Object>,
    /// `left[(γ', z)] = γ'·z`, defined when `β(γ') = τ(z)`
    pub left: BTreeMap<(Arrow, usize), usize>,
    /// `right[(z, γ)] = z·γ`, defined when `σ(z) = α(γ)`
    pub right: BTreeMap<(usize, Arrow), usize>,
}

impl GeneralizedHom {
    pub fn new(
        source: FiniteGroupoid,
        target: FiniteGroupoid,
        points: Vec<String>,
        tau: Vec<Object>,
        sigma: Vec<Object>,
        left: BTreeMap<(Arrow, usize), usize>,
        right: BTreeMap<(usize, Arrow), usize>,
    ) -> Result<Self> {
        let h = GeneralizedHom { source, target, points, tau, sigma, left, right };
        h.validate()?;
        Ok(h)
    }

    /// The identity of `Γ`: `Z = Γ` with the multiplication actions.
    pub fn identity(g: &FiniteGroupoid) -> Self {
        let n = g.n_arrows();
        let mut left = BTreeMap::new();
        let mut right = BTreeMap::new();
        for a in 0..n {
            for z in 0..n {
                if let Some(c) = g.compose(a, z) {
                    left.insert((a, z), c);
                }
                if let Some(c) = g.compose(z, a) {
                    right.insert((z, a), c);
                }
            }
        }
        GeneralizedHom {
            source: g.clone(),
            target: g.clone(),
            points: g.arrows.iter().map(|a| a.id.clone()).collect(),
            tau: (0..n).map(|a| g.target(a)).collect(),
            sigma: (0..n).map(|a| g.source(a)).collect(),
            left,
            right,
        }
    }

    /// `Z_f = Γ'_0 ×_{f, α} Γ` for a strict homomorphism `f : Γ' → Γ`.
    pub fn from_strict(source: &FiniteGroupoid, target: &FiniteGroupoid, f: &StrictHom) -> Result<Self> {
        f.check(source, target)?;
        let mut pts = Vec::new();
        for x in 0..source.n_objects() {
            for h in 0..target.n_arrows() {
                if f.on_objects[x] == target.target(h) {
                    pts.push((x, h));
                }
            }
        }
        let index: HashMap<(Object, Arrow), usize> = pts.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut left = BTreeMap::new();
        let mut right = BTreeMap::new();
        for (z, &(x, h)) in pts.iter().enumerate() {
            for a in 0..source.n_arrows() {
                if source.source(a) == x {
                    left.insert((a, z), index[&(source.target(a), target.mul(f.on_arrows[a], h))]);
                }
            }
            for b in 0..target.n_arrows() {
                if target.source(h) == target.target(b) {
                    right.insert((z, b), index[&(x, target.mul(h, b))]);
                }
            }
        }
        Self::new(
            source.clone(),
            target.clone(),
            pts.iter().map(|&(x, h)| format!("({},{})", source.objects[x], target.arrows[h].id)).collect(),
            pts.iter().map(|&(x, _)| x).collect(),
            pts.iter().map(|&(_, h)| target.source(h)).collect(),
            left,
            right,
        )
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn act_left(&self, a: Arrow, z: usize) -> Option<usize> {
        self.left.get(&(a, z)).copied()
    }

    pub fn act_right(&self, z: usize, b: Arrow) -> Option<usize> {
        self.right.get(&(z, b)).copied()
    }

    /// The unique `γ` with `z1·γ = z2`.
    pub fn translation(&self, z1: usize, z2: usize) -> Result<Arrow> {
        let found: Vec<Arrow> = (0..self.target.n_arrows()).filter(|&b| self.act_right(z1, b) == Some(z2)).collect();
        match found.as_slice() {
            [b] => Ok(*b),
            [] => err(format!("no arrow moves {} to {}", self.points[z1], self.points[z2])),
            _ => err(format!("several arrows move {} to {}", self.points[z1], self.points[z2])),
        }
    }

    /// Action axioms, commuting actions and principality, exhaustively.
    pub fn validate(&self) -> Result<()> {
        let (gp, g) = (&self.source, &self.target);
        let nz = self.points.len();
        if self.tau.len() != nz || self.sigma.len() != nz {
            return err("τ and σ must be defined on every point");
        }
        if self.tau.iter().any(|&x| x >= gp.n_objects()) || self.sigma.iter().any(|&x| x >= g.n_objects()) {
            return err("τ or σ lands outside the object sets");
        }
        for z in 0..nz {
            for a in 0..gp.n_arrows() {
                let defined = gp.source(a) == self.tau[z];
                match (defined, self.act_left(a, z)) {
                    (true, Some(w)) => {
                        if w >= nz || self.tau[w] != gp.target(a) || self.sigma[w] != self.sigma[z] {
                            return err("left action moves τ or σ the wrong way");
                        }
                    }
                    (true, None) => return err(format!("left action of {} on {} is missing", gp.arrows[a].id, self.points[z])),
                    (false, Some(_)) => return err("left action defined on a non-composable pair"),
                    (false, None) => {}
                }
            }
            for b in 0..g.n_arrows() {
                let defined = self.sigma[z] == g.target(b);
                match (defined, self.act_right(z, b)) {
                    (true, Some(w)) => {
                        if w >= nz || self.sigma[w] != g.source(b) || self.tau[w] != self.tau[z] {
                            return err("right action moves τ or σ the wrong way");
                        }
                    }
                    (true, None) => return err(format!("right action of {} on {} is missing", g.arrows[b].id, self.points[z])),
                    (false, Some(_)) => return err("right action defined on a non-composable pair"),
                    (false, None) => {}
                }
            }
            if self.act_left(gp.identity(self.tau[z]), z) != Some(z) || self.act_right(z, g.identity(self.sigma[z])) != Some(z) {
                return err("identities do not act trivially");
            }
        }
        for z in 0..nz {
            for a in 0..gp.n_arrows() {
                let Some(az) = self.act_left(a, z) else { continue };
                for a2 in 0..gp.n_arrows() {
                    if let Some(a2a) = gp.compose(a2, a) {
                        if self.act_left(a2, az) != self.act_left(a2a, z) {
                            return err("left action is not associative");
                        }
                    }
                }
                for b in 0..g.n_arrows() {
                    if let Some(zb) = self.act_right(z, b) {
                        if self.act_right(az, b) != self.act_left(a, zb) {
                            return err("left and right actions do not commute");
                        }
                    }
                }
            }
            for b in 0..g.n_arrows() {
                let Some(zb) = self.act_right(z, b) else { continue };
                for b2 in 0..g.n_arrows() {
                    if let Some(bb2) = g.compose(b, b2) {
                        if self.act_right(zb, b2) != self.act_right(z, bb2) {
                            return err("right action is not associative");
                        }
                    }
                }
            }
        }
        // principal: τ onto, and Γ acts simply transitively on each τ-fiber
        for x in 0..gp.n_objects() {
            if !self.tau.contains(&x) {
                return err(format!("τ misses the object {}", gp.objects[x]));
            }
        }
        for z1 in 0..nz {
            for z2 in 0..nz {
                if self.tau[z1] == self.tau[z2] {
                    self.translation(z1, z2)?;
                }
            }
        }
        Ok(())
    }

    /// `self ∘ next`: from `self.source` to `next.target`, with
    /// `Z'' = Z ×_{σ, τ'} Z' / (z h, z') ~ (z, h z')`.
    pub fn compose(&self, next: &GeneralizedHom) -> Result<GeneralizedHom> {
        if self.target != next.source {
            return err("generalized homomorphisms are not composable");
        }
        let h = &self.target;
        let pairs: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|z| (0..next.len()).map(move |w| (z, w)))
            .filter(|&(z, w)| self.sigma[z] == next.tau[w])
            .collect();
        // orbit labels under (z, w) ↦ (z·k, k^{-1}·w)
        let mut class: HashMap<(usize, usize), usize> = HashMap::new();
        let mut reps: Vec<(usize, usize)> = Vec::new();
        for &(z, w) in &pairs {
            if class.contains_key(&(z, w)) {
                continue;
            }
            let id = reps.len();
            reps.push((z, w));
            for k in 0..h.n_arrows() {
                if let (Some(zk), Some(kw)) = (self.act_right(z, k), next.act_left(h.inverse(k), w)) {
                    class.insert((zk, kw), id);
                }
            }
        }
        let mut left = BTreeMap::new();
        let mut right = BTreeMap::new();
        for (id, &(z, w)) in reps.iter().enumerate() {
            for a in 0..self.source.n_arrows() {
                if let Some(az) = self.act_left(a, z) {
                    left.insert((a, id), class[&(az, w)]);
                }
            }
            for b in 0..next.target.n_arrows() {
                if let Some(wb) = next.act_right(w, b) {
                    right.insert((id, b), class[&(z, wb)]);
                }
            }
        }
        GeneralizedHom::new(
            self.source.clone(),
            next.target.clone(),
            reps.iter().map(|&(z, w)| format!("[{},{}]", self.points[z], next.points[w])).collect(),
            reps.iter().map(|&(z, _)| self.tau[z]).collect(),
            reps.iter().map(|&(_, w)| next.sigma[w]).collect(),
            left,
            right,
        )
    }
}

/// Pulls a bundle over `Γ` back to `Γ'` along `φ`, returned in cocycle form
/// after choosing in each `τ`-fiber the first point as base point.
pub fn pullback_bundle(phi: &GeneralizedHom, b: &BundleCocycle) -> Result<BundleCocycle> {
    if phi.target != b.base {
        return err("bundle does not live over the target of the homomorphism");
    }
    phi.validate()?;
    let gp = &phi.source;
    let base_point: Vec<usize> = (0..gp.n_objects()).map(|x| phi.tau.iter().position(|&t| t == x).unwrap()).collect();
    let mut psi = Vec::with_capacity(gp.n_arrows());
    for a in 0..gp.n_arrows() {
        let z0 = base_point[gp.source(a)];
        let z1 = base_point[gp.target(a)];
        let moved = phi.act_left(a, z0).expect("left action is total on composable pairs");
        // a·[(z0, e)] = [(z1 γ, e)] = [(z1, ψ(γ))]
        let gamma = phi.translation(z1, moved)?;
        psi.push(b.psi[gamma]);
    }
    BundleCocycle::new(gp.clone(), b.group.clone(), psi)
}

/// `Γ'[Z] = Z ×_{τ, α} Γ' ×_{β, τ} Z` with the projections `τ` and `σ`.
pub fn pullback_groupoid(phi: &GeneralizedHom) -> Result<(FiniteGroupoid, StrictHom, StrictHom)> {
    phi.validate()?;
    let gp = &phi.source;
    let mut triples = Vec::new();
    for z1 in 0..phi.len() {
        for a in 0..gp.n_arrows() {
            for z2 in 0..phi.len() {
                if phi.tau[z1] == gp.target(a) && gp.source(a) == phi.tau[z2] {
                    triples.push((z1, a, z2));
                }
            }
        }
    }
    let index: HashMap<(usize, Arrow, usize), usize> = triples.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let arrows = triples
        .iter()
        .map(|&(z1, a, z2)| ArrowRecord { id: format!("({},{},{})", phi.points[z1], gp.arrows[a].id, phi.points[z2]), src: z2, tgt: z1 })
        .collect();
    let groupoid = FiniteGroupoid::from_fn(phi.points.clone(), arrows, |x, y| {
        let (z1, a1, _) = triples[x];
        let (_, a2, z3) = triples[y];
        index[&(z1, gp.mul(a1, a2), z3)]
    })?;
    let tau = StrictHom { on_objects: phi.tau.clone(), on_arrows: triples.iter().map(|&(_, a, _)| a).collect() };
    let mut sigma_arrows = Vec::with_capacity(triples.len());
    for &(z1, a, z2) in &triples {
        let moved = phi.act_left(a, z2).expect("composable");
        sigma_arrows.push(phi.translation(z1, moved)?);
    }
    let sigma = StrictHom { on_objects: phi.sigma.clone(), on_arrows: sigma_arrows };
    tau.check(&groupoid, gp)?;
    sigma.check(&groupoid, &phi.target)?;
    Ok((groupoid, tau, sigma))
}

/// `ψ(γ)` for a loop `γ` at `x`.
pub fn holonomy(b: &BundleCocycle, x: Object, gamma: Arrow) -> Result<usize> {
    if x >= b.base.n_objects() {
        return err(format!("no object with index {x}"));
    }
    if gamma >= b.base.n_arrows() || b.base.source(gamma) != x || b.base.target(gamma) != x {
        return err("arrow is not a loop at the object");
    }
    Ok(b.psi[gamma])
}

/// The holonomy on the vertex group at `x`, checked to be a homomorphism.
pub fn holonomy_rep(b: &BundleCocycle, x: Object) -> Result<Vec<(Arrow, usize)>> {
    if x >= b.base.n_objects() {
        return err(format!("no object with index {x}"));
    }
    let loops = b.base.vertex_group(x);
    for &a in &loops {
        for &c in &loops {
            let ac = b.base.mul(a, c);
            if b.psi[ac] != b.group.mul(b.psi[a], b.psi[c]) {
                return Err(Error::CheckFailed(format!("holonomy is not multiplicative on ({}, {})", b.base.arrows[a].id, b.base.arrows[c].id)));
            }
        }
    }
    loops.into_iter().map(|a| Ok((a, holonomy(b, x, a)?))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::cohomology_window;

    fn z2() -> FiniteGroupoid {
        FiniteGroupoid::from_group(&FiniteGroup::cyclic(2))
    }

    #[test]
    fn nerve_sizes() {
        assert_eq!(nerve(&z2(), 2).size(2), 4);
        let d = nerve(&FiniteGroupoid::discrete(3), 4);
        assert!((0..=4).all(|n| d.size(n) == 3));
        let p = nerve(&FiniteGroupoid::pair(3), 3);
        assert!((0..=3).all(|n| p.size(n) == 3usize.pow(n as u32 + 1)));
    }

    #[test]
    fn simplicial_identities() {
        for g in [z2(), FiniteGroupoid::pair(2), FiniteGroupoid::from_group(&FiniteGroup::symmetric(3))] {
            nerve(&g, 4).check_identities().unwrap();
        }
    }

    #[test]
    fn coboundary_squares_to_zero() {
        let n = nerve(&z2(), 3);
        for level in 0..2 {
            for p in 0..n.size(level) {
                let mut c = Cochain::zero(&n, level);
                c.values[p] = Rational::one();
                assert!(coboundary(&n, &coboundary(&n, &c)).is_zero());
            }
        }
    }

    #[test]
    fn constants_are_cocycles() {
        let g = FiniteGroupoid::pair(2);
        let n = nerve(&g, 1);
        let c = Cochain { level: 0, values: vec![Rational::from_integer(5.into()); 2] };
        assert!(coboundary(&n, &c).is_zero());
    }

    #[test]
    fn cup_of_functions_on_objects() {
        // (a ∨ b)(x) = a(x) b(x) at level 0
        let g = FiniteGroupoid::pair(2);
        let n = nerve(&g, 2);
        let a = Cochain { level: 0, values: vec![Rational::from_integer(2.into()), Rational::from_integer(3.into())] };
        let b = Cochain { level: 0, values: vec![Rational::from_integer(5.into()), Rational::from_integer(7.into())] };
        assert_eq!(cup(&n, &a, &b).values, vec![Rational::from_integer(10.into()), Rational::from_integer(21.into())]);
    }

    #[test]
    fn z2_is_rationally_acyclic() {
        let n = nerve(&z2(), 4);
        let c = GroupoidComplex { nerve: &n };
        assert_eq!(cohomology_window(&c, 0).unwrap().dimension, 1);
        for k in 1..=3 {
            assert_eq!(cohomology_window(&c, k).unwrap().dimension, 0);
        }
    }

    #[test]
    fn mod_two_holonomy() {
        let z4 = FiniteGroupoid::from_group(&FiniteGroup::cyclic(4));
        let b = BundleCocycle::new(z4, FiniteGroup::cyclic(2), vec![0, 1, 0, 1]).unwrap();
        assert_eq!(holonomy(&b, 0, 1).unwrap(), 1);
        assert_eq!(holonomy_rep(&b, 0).unwrap(), vec![(0, 0), (1, 1), (2, 0), (3, 1)]);
        assert!(BundleCocycle::new(b.base.clone(), b.group.clone(), vec![0, 1, 1, 1]).is_err());
    }

    #[test]
    fn symmetric_group_is_not_abelian() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert!((0..6).any(|a| (0..6).any(|b| s3.mul(a, b) != s3.mul(b, a))));
    }
}
