//! 2x2 matrix groups over tiny rings (`F_q` and `F_q[u]/(u^2)`) and subgroup enumeration.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::algebra::{Field, Fq, FqElem};
use crate::error::{Error, Result};

/// A finite commutative ring with elements `0..size` and full operation tables.
#[derive(Clone, Debug)]
pub struct SmallRing {
    pub name: String,
    pub size: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<Option<u16>>,
}

impl SmallRing {
    fn from_ops(name: String, size: usize, add: impl Fn(usize, usize) -> usize, mul: impl Fn(usize, usize) -> usize) -> SmallRing {
        let mut at = vec![0u16; size * size];
        let mut mt = vec![0u16; size * size];
        for a in 0..size {
            for b in 0..size {
                at[a * size + b] = add(a, b) as u16;
                mt[a * size + b] = mul(a, b) as u16;
            }
        }
        let neg = (0..size)
            .map(|a| (0..size).find(|&b| at[a * size + b] == 0).unwrap() as u16)
            .collect();
        let inv = (0..size)
            .map(|a| (0..size).find(|&b| mt[a * size + b] == 1).map(|b| b as u16))
            .collect();
        SmallRing {
            name,
            size,
            add: at,
            mul: mt,
            neg,
            inv,
        }
    }

    /// `F_q` itself; element `i` is `FqElem(i)`.
    pub fn field(fq: &Fq) -> SmallRing {
        let q = fq.order();
        SmallRing::from_ops(
            format!("F{q}"),
            q,
            |a, b| fq.add(&FqElem(a as u8), &FqElem(b as u8)).0 as usize,
            |a, b| fq.mul(&FqElem(a as u8), &FqElem(b as u8)).0 as usize,
        )
    }

    /// `F_q[u]/(u^2)`; element `a + b u` has index `a + q b`.
    pub fn dual_numbers(fq: &Fq) -> SmallRing {
        let q = fq.order();
        let split = |x: usize| (FqElem((x % q) as u8), FqElem((x / q) as u8));
        let join = |a: FqElem, b: FqElem| a.0 as usize + q * b.0 as usize;
        SmallRing::from_ops(
            format!("F{q}[u]/u^2"),
            q * q,
            |x, y| {
                let (a, b) = split(x);
                let (c, d) = split(y);
                join(fq.add(&a, &c), fq.add(&b, &d))
            },
            |x, y| {
                let (a, b) = split(x);
                let (c, d) = split(y);
                join(fq.mul(&a, &c), fq.add(&fq.mul(&a, &d), &fq.mul(&b, &c)))
            },
        )
    }

    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.size + b as usize]
    }

    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.size + b as usize]
    }

    pub fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }

    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: u16) -> Option<u16> {
        self.inv[a as usize]
    }

    pub fn is_unit(&self, a: u16) -> bool {
        self.inv[a as usize].is_some()
    }

    pub fn units(&self) -> Vec<u16> {
        (0..self.size as u16).filter(|&a| self.is_unit(a)).collect()
    }
}

/// Row-major `[a, b, c, d]` for `[[a, b], [c, d]]`.
pub type Mat = [u16; 4];

pub fn mat_mul(r: &SmallRing, x: &Mat, y: &Mat) -> Mat {
    let s = |a: u16, b: u16, c: u16, d: u16| r.add(r.mul(a, b), r.mul(c, d));
    [
        s(x[0], y[0], x[1], y[2]),
        s(x[0], y[1], x[1], y[3]),
        s(x[2], y[0], x[3], y[2]),
        s(x[2], y[1], x[3], y[3]),
    ]
}

pub fn mat_det(r: &SmallRing, x: &Mat) -> u16 {
    r.sub(r.mul(x[0], x[3]), r.mul(x[1], x[2]))
}

pub fn mat_trace(r: &SmallRing, x: &Mat) -> u16 {
    r.add(x[0], x[3])
}

pub fn mat_inv(r: &SmallRing, x: &Mat) -> Option<Mat> {
    let di = r.inv(mat_det(r, x))?;
    Some([
        r.mul(x[3], di),
        r.mul(r.neg(x[1]), di),
        r.mul(r.neg(x[2]), di),
        r.mul(x[0], di),
    ])
}

pub fn mat_add(r: &SmallRing, x: &Mat, y: &Mat) -> Mat {
    [r.add(x[0], y[0]), r.add(x[1], y[1]), r.add(x[2], y[2]), r.add(x[3], y[3])]
}

pub fn mat_sub(r: &SmallRing, x: &Mat, y: &Mat) -> Mat {
    [r.sub(x[0], y[0]), r.sub(x[1], y[1]), r.sub(x[2], y[2]), r.sub(x[3], y[3])]
}

pub const IDENTITY: Mat = [1, 0, 0, 1];

fn all_mats(r: &SmallRing) -> impl Iterator<Item = Mat> + '_ {
    let n = r.size as u16;
    (0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).flat_map(move |c| (0..n).map(move |d| [a, b, c, d]))))
}

/// All of `GL_2(R)`.
pub fn gl2_elements(r: &SmallRing) -> Vec<Mat> {
    all_mats(r).filter(|m| r.is_unit(mat_det(r, m))).collect()
}

/// All of `SL_2(R)`.
pub fn sl2_elements(r: &SmallRing) -> Vec<Mat> {
    all_mats(r).filter(|m| mat_det(r, m) == 1).collect()
}

/// Subgroup generated by `gens` inside `GL_2(R)`, by breadth-first closure.
pub fn closure(r: &SmallRing, gens: &[Mat]) -> HashSet<Mat> {
    let mut seen: HashSet<Mat> = HashSet::from([IDENTITY]);
    let mut queue = VecDeque::from([IDENTITY]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = mat_mul(r, &x, g);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Commutators `[x, y] = x y x^-1 y^-1` of all pairs drawn from `gens`.
pub fn commutators(r: &SmallRing, a: &[Mat], b: &[Mat]) -> Vec<Mat> {
    let mut out = HashSet::new();
    for x in a {
        let xi = mat_inv(r, x).unwrap();
        for y in b {
            let yi = mat_inv(r, y).unwrap();
            out.insert(mat_mul(r, &mat_mul(r, x, y), &mat_mul(r, &xi, &yi)));
        }
    }
    let mut v: Vec<Mat> = out.into_iter().collect();
    v.sort_unstable();
    v
}

/// A group with an explicit multiplication table on `0..n`.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    pub n: usize,
    table: Vec<u16>,
    inv: Vec<u16>,
    pub identity: u16,
}

/// A subgroup as a bitset over the elements of its group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    bits: Vec<u64>,
}

impl Subgroup {
    fn empty(n: usize) -> Self {
        Subgroup {
            bits: vec![0; n.div_ceil(64)],
        }
    }

    pub fn contains(&self, i: u16) -> bool {
        self.bits[i as usize / 64] >> (i % 64) & 1 == 1
    }

    fn insert(&mut self, i: u16) -> bool {
        let w = &mut self.bits[i as usize / 64];
        let had = *w >> (i % 64) & 1 == 1;
        *w |= 1 << (i % 64);
        !had
    }

    pub fn order(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn elements(&self) -> Vec<u16> {
        let mut out = Vec::with_capacity(self.order());
        for (wi, w) in self.bits.iter().enumerate() {
            let mut x = *w;
            while x != 0 {
                let b = x.trailing_zeros();
                out.push((wi * 64) as u16 + b as u16);
                x &= x - 1;
            }
        }
        out
    }

    pub fn is_subset(&self, o: &Subgroup) -> bool {
        self.bits.iter().zip(&o.bits).all(|(a, b)| a & !b == 0)
    }
}

/// Largest group accepted by the subgroup enumerators.
pub const MAX_ENUMERATION_ORDER: usize = 4000;

impl FiniteGroup {
    pub fn from_table(n: usize, mul: impl Fn(usize, usize) -> usize) -> FiniteGroup {
        let mut table = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = mul(a, b) as u16;
            }
        }
        let identity = (0..n).find(|&e| (0..n).all(|a| table[e * n + a] as usize == a)).expect("identity") as u16;
        let inv = (0..n)
            .map(|a| (0..n).find(|&b| table[a * n + b] == identity).expect("inverse") as u16)
            .collect();
        FiniteGroup {
            n,
            table,
            inv,
            identity,
        }
    }

    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.table[a as usize * self.n + b as usize]
    }

    pub fn inv(&self, a: u16) -> u16 {
        self.inv[a as usize]
    }

    pub fn conj(&self, x: u16, g: u16) -> u16 {
        self.mul(self.mul(x, g), self.inv(x))
    }

    pub fn whole(&self) -> Subgroup {
        let mut s = Subgroup::empty(self.n);
        for i in 0..self.n {
            s.insert(i as u16);
        }
        s
    }

    pub fn trivial(&self) -> Subgroup {
        let mut s = Subgroup::empty(self.n);
        s.insert(self.identity);
        s
    }

    /// `<base, extra>`.
    pub fn generate(&self, base: &Subgroup, extra: &[u16]) -> Subgroup {
        let mut s = base.clone();
        if extra.iter().all(|&g| s.contains(g)) {
            return s;
        }
        let mut gens: Vec<u16> = extra.to_vec();
        gens.extend(base.elements());
        let mut queue: VecDeque<u16> = s.elements().into();
        for &g in extra {
            if s.insert(g) {
                queue.push_back(g);
            }
        }
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.mul(x, g);
                if s.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        s
    }

    pub fn conjugate(&self, h: &Subgroup, x: u16) -> Subgroup {
        let mut s = Subgroup::empty(self.n);
        for g in h.elements() {
            s.insert(self.conj(x, g));
        }
        s
    }

    /// All distinct conjugates of `h`.
    pub fn conjugates(&self, h: &Subgroup) -> Vec<Subgroup> {
        let mut set: HashSet<Subgroup> = HashSet::new();
        for x in 0..self.n {
            set.insert(self.conjugate(h, x as u16));
        }
        let mut v: Vec<Subgroup> = set.into_iter().collect();
        v.sort();
        v
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        (0..self.n).all(|x| h.elements().iter().all(|&g| h.contains(self.conj(x as u16, g))))
    }

    /// Representatives of the element conjugacy classes (least index in each).
    pub fn class_reps(&self) -> Vec<u16> {
        let mut seen = vec![false; self.n];
        let mut reps = Vec::new();
        for g in 0..self.n {
            if seen[g] {
                continue;
            }
            reps.push(g as u16);
            for x in 0..self.n {
                seen[self.conj(x as u16, g as u16) as usize] = true;
            }
        }
        reps
    }

    pub fn commutator_subgroup(&self, h: &Subgroup) -> Subgroup {
        let el = h.elements();
        let mut comms = HashSet::new();
        for &a in &el {
            for &b in &el {
                comms.insert(self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b))));
            }
        }
        let gens: Vec<u16> = comms.into_iter().collect();
        self.generate(&self.trivial(), &gens)
    }

    /// Normal subgroups, found as normal closures of conjugacy classes and their joins.
    pub fn normal_subgroups(&self) -> Vec<Subgroup> {
        let mut found: HashSet<Subgroup> = HashSet::from([self.trivial()]);
        let closures: Vec<Subgroup> = self
            .class_reps()
            .into_iter()
            .map(|g| {
                let cls: Vec<u16> = (0..self.n).map(|x| self.conj(x as u16, g)).collect();
                self.generate(&self.trivial(), &cls)
            })
            .collect();
        let mut frontier: Vec<Subgroup> = vec![self.trivial()];
        while let Some(h) = frontier.pop() {
            for c in &closures {
                let j = self.generate(&h, &c.elements());
                if found.insert(j.clone()) {
                    frontier.push(j);
                }
            }
        }
        let mut v: Vec<Subgroup> = found.into_iter().collect();
        v.sort_by_key(|s| (s.order(), s.clone()));
        v
    }

    fn check_size(&self) -> Result<()> {
        if self.n > MAX_ENUMERATION_ORDER {
            Err(Error::SizeLimit(format!("group of order {} exceeds {MAX_ENUMERATION_ORDER}", self.n)))
        } else {
            Ok(())
        }
    }

    /// Subgroups up to conjugacy from closures of pairs (first entry a class representative),
    /// extended by one more generator.
    pub fn subgroups_by_generators(&self) -> Result<Vec<SubgroupClass>> {
        self.check_size()?;
        let mut reg = Registry::default();
        let triv = self.trivial();
        reg.add(self, triv.clone());
        for a in self.class_reps() {
            for b in 0..self.n as u16 {
                reg.add(self, self.generate(&triv, &[a, b]));
            }
        }
        let pairs: Vec<Subgroup> = reg.classes.iter().map(|c| c.rep.clone()).collect();
        for h in pairs {
            for c in 0..self.n as u16 {
                if !h.contains(c) {
                    reg.add(self, self.generate(&h, &[c]));
                }
            }
        }
        Ok(reg.finish())
    }

    /// Subgroups up to conjugacy by extending every known subgroup by one element until stable.
    pub fn subgroups_bottom_up(&self) -> Result<Vec<SubgroupClass>> {
        self.check_size()?;
        let mut reg = Registry::default();
        let mut work = vec![self.trivial()];
        reg.add(self, self.trivial());
        while let Some(h) = work.pop() {
            for g in 0..self.n as u16 {
                if h.contains(g) {
                    continue;
                }
                let k = self.generate(&h, &[g]);
                if reg.add(self, k.clone()) {
                    work.push(k);
                }
            }
        }
        Ok(reg.finish())
    }
}

/// A conjugacy class of subgroups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupClass {
    pub rep: Subgroup,
    pub order: usize,
    pub class_size: usize,
}

#[derive(Default)]
struct Registry {
    seen: HashSet<Subgroup>,
    classes: Vec<SubgroupClass>,
}

impl Registry {
    fn add(&mut self, g: &FiniteGroup, h: Subgroup) -> bool {
        if self.seen.contains(&h) {
            return false;
        }
        let conj = g.conjugates(&h);
        let rep = conj[0].clone();
        let size = conj.len();
        self.seen.extend(conj);
        self.classes.push(SubgroupClass {
            order: rep.order(),
            rep,
            class_size: size,
        });
        true
    }

    fn finish(mut self) -> Vec<SubgroupClass> {
        self.classes.sort_by_key(|c| (c.order, c.rep.clone()));
        self.classes
    }
}

/// `GL_2(F_q)` for small `q` with its elements and table.
#[derive(Clone, Debug)]
pub struct MatGroup {
    pub ring: SmallRing,
    pub elements: Vec<Mat>,
    pub index: HashMap<Mat, u16>,
    pub group: FiniteGroup,
}

impl MatGroup {
    pub fn new(ring: SmallRing, elements: Vec<Mat>) -> Result<MatGroup> {
        if elements.len() > MAX_ENUMERATION_ORDER {
            return Err(Error::SizeLimit(format!("matrix group of order {}", elements.len())));
        }
        let index: HashMap<Mat, u16> = elements.iter().enumerate().map(|(i, m)| (*m, i as u16)).collect();
        let group = FiniteGroup::from_table(elements.len(), |a, b| {
            index[&mat_mul(&ring, &elements[a], &elements[b])] as usize
        });
        Ok(MatGroup {
            ring,
            elements,
            index,
            group,
        })
    }

    pub fn mat(&self, i: u16) -> &Mat {
        &self.elements[i as usize]
    }

    /// Cycle lengths of `v -> g v` on the nonzero column vectors, sorted.
    pub fn vector_pattern(&self, g: &Mat) -> Vec<usize> {
        let r = &self.ring;
        let n = r.size as u16;
        let apply = |v: (u16, u16)| {
            (
                r.add(r.mul(g[0], v.0), r.mul(g[1], v.1)),
                r.add(r.mul(g[2], v.0), r.mul(g[3], v.1)),
            )
        };
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if (a, b) == (0, 0) || seen.contains(&(a, b)) {
                    continue;
                }
                let mut len = 0;
                let mut v = (a, b);
                while seen.insert(v) {
                    len += 1;
                    v = apply(v);
                }
                out.push(len);
            }
        }
        out.sort_unstable();
        out
    }
}

/// `GL_2(F_q)` for `q` in `{2, 3, 4}`.
pub fn gl2_small(qf: usize) -> Result<MatGroup> {
    if ![2, 3, 4].contains(&qf) {
        return Err(Error::UnsupportedField(format!("GL_2 tables are built for q in {{2, 3, 4}}, got {qf}")));
    }
    let fq = Fq::with_order(qf)?;
    let ring = SmallRing::field(&fq);
    let el = gl2_elements(&ring);
    MatGroup::new(ring, el)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(gl2_small(2).unwrap().elements.len(), 6);
        assert_eq!(gl2_small(3).unwrap().elements.len(), 48);
        assert_eq!(gl2_small(4).unwrap().elements.len(), 180);
        assert!(gl2_small(5).is_err());
        let f3 = Fq::new(3, 1).unwrap();
        assert_eq!(gl2_elements(&SmallRing::dual_numbers(&f3)).len(), 3888);
    }

    #[test]
    fn s3_subgroups() {
        let g = gl2_small(2).unwrap();
        let a = g.group.subgroups_by_generators().unwrap();
        let b = g.group.subgroups_bottom_up().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 4);
        assert_eq!(a.iter().map(|c| c.class_size).sum::<usize>(), 6);
        let index2: Vec<_> = a.iter().filter(|c| c.order == 3).collect();
        assert_eq!(index2.len(), 1);
        assert_eq!(index2[0].class_size, 1);
    }

    #[test]
    fn strategies_agree_on_gl2_f3() {
        let g = gl2_small(3).unwrap();
        let a = g.group.subgroups_by_generators().unwrap();
        let b = g.group.subgroups_bottom_up().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.last().unwrap().order, 48);
    }

    #[test]
    fn patterns_on_vectors() {
        let g = gl2_small(3).unwrap();
        assert_eq!(g.vector_pattern(&IDENTITY), vec![1; 8]);
        assert_eq!(g.vector_pattern(&[2, 0, 0, 2]), vec![2; 4]);
    }
}
