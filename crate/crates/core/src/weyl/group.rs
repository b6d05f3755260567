//! Weyl groups of types B and D as signed permutations of `Z^l`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RootType {
    B,
    D,
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RootType::B => "B",
            RootType::D => "D",
        })
    }
}

impl std::str::FromStr for RootType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "B" | "b" => Ok(RootType::B),
            "D" | "d" => Ok(RootType::D),
            other => Err(Error::Parse(format!("unknown root type `{other}` (expected B or D)"))),
        }
    }
}

/// Simple roots and coroots of `B_l` or `D_l` in the lattice `Z^l`.
///
/// `α_i = e_i - e_{i+1}` for `i < l`; `α_l = e_l` for B (coroot `2e_l`) and
/// `α_l = e_{l-1} + e_l` for D. Indices are 1-based throughout, matching
/// the usual numbering of simple reflections.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootDatum {
    pub ty: RootType,
    pub rank: usize,
}

impl RootDatum {
    pub fn new(ty: RootType, rank: usize) -> Result<Self> {
        let min = match ty {
            RootType::B => 2,
            RootType::D => 3,
        };
        if rank < min {
            return Err(Error::PreconditionViolated(format!("{ty}_{rank} needs rank >= {min}")));
        }
        Ok(RootDatum { ty, rank })
    }

    /// `α_i`, `1 <= i <= l`.
    pub fn simple_root(&self, i: usize) -> Vec<i64> {
        let l = self.rank;
        let mut a = vec![0; l];
        if i < l {
            a[i - 1] = 1;
            a[i] = -1;
        } else {
            match self.ty {
                RootType::B => a[l - 1] = 1,
                RootType::D => {
                    a[l - 2] = 1;
                    a[l - 1] = 1;
                }
            }
        }
        a
    }

    /// `α_i^∨` as a vector, so that `⟨λ, α_i^∨⟩` is a dot product.
    pub fn simple_coroot(&self, i: usize) -> Vec<i64> {
        let a = self.simple_root(i);
        if self.ty == RootType::B && i == self.rank {
            a.iter().map(|x| 2 * x).collect()
        } else {
            a
        }
    }

    pub fn pairing(&self, lambda: &[i64], i: usize) -> i64 {
        lambda.iter().zip(self.simple_coroot(i)).map(|(a, b)| a * b).sum()
    }

    /// `s_i(λ) = λ - ⟨λ, α_i^∨⟩ α_i`.
    pub fn reflect(&self, i: usize, lambda: &[i64]) -> Vec<i64> {
        let k = self.pairing(lambda, i);
        lambda.iter().zip(self.simple_root(i)).map(|(x, a)| x - k * a).collect()
    }

    /// `a[i][j] = ⟨α_j, α_i^∨⟩` computed from the stored roots.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        (1..=self.rank)
            .map(|i| (1..=self.rank).map(|j| self.pairing(&self.simple_root(j), i)).collect())
            .collect()
    }

    /// The Cartan matrix read off the Dynkin diagram of the type.
    pub fn dynkin_cartan_matrix(&self) -> Vec<Vec<i64>> {
        let l = self.rank;
        let mut a = vec![vec![0i64; l]; l];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        for i in 0..l.saturating_sub(2) {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
        match self.ty {
            RootType::B => {
                // Double edge with the arrow towards the short root α_l.
                a[l - 2][l - 1] = -1;
                a[l - 1][l - 2] = -2;
            }
            RootType::D => {
                // α_l hangs off α_{l-2}; α_{l-1} and α_l are not joined.
                a[l - 3][l - 1] = -1;
                a[l - 1][l - 3] = -1;
            }
        }
        a
    }

    /// Order of `s_i s_j`, from the Cartan matrix.
    pub fn braid_order(&self, i: usize, j: usize) -> usize {
        if i == j {
            return 1;
        }
        let c = self.cartan_matrix();
        match c[i - 1][j - 1] * c[j - 1][i - 1] {
            0 => 2,
            1 => 3,
            2 => 4,
            3 => 6,
            p => panic!("not a finite type: product {p}"),
        }
    }

    /// Positive roots: the roots whose first nonzero coordinate is positive.
    pub fn positive_roots(&self) -> Vec<Vec<i64>> {
        let l = self.rank;
        let mut out = Vec::new();
        for i in 0..l {
            for j in i + 1..l {
                for s in [-1, 1] {
                    let mut r = vec![0; l];
                    r[i] = 1;
                    r[j] = s;
                    out.push(r);
                }
            }
            if self.ty == RootType::B {
                let mut r = vec![0; l];
                r[i] = 1;
                out.push(r);
            }
        }
        out
    }
}

impl fmt::Display for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.ty, self.rank)
    }
}

fn is_positive(r: &[i64]) -> bool {
    r.iter().find(|x| **x != 0).is_some_and(|x| *x > 0)
}

/// A signed permutation: `w(e_j) = sign · e_k` is stored as `±k` (1-based)
/// at position `j - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedPerm(Vec<i32>);

impl SignedPerm {
    pub fn identity(l: usize) -> Self {
        SignedPerm((1..=l as i32).collect())
    }

    pub fn from_images(images: Vec<i32>) -> Result<Self> {
        let l = images.len() as i32;
        let set: BTreeSet<i32> = images.iter().map(|x| x.abs()).collect();
        if set.len() != images.len() || set.iter().any(|x| *x < 1 || *x > l) {
            return Err(Error::Parse(format!("not a signed permutation: {images:?}")));
        }
        Ok(SignedPerm(images))
    }

    pub fn images(&self) -> &[i32] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn negative_signs(&self) -> usize {
        self.0.iter().filter(|x| **x < 0).count()
    }

    /// `self ∘ other`.
    pub fn mul(&self, other: &SignedPerm) -> SignedPerm {
        SignedPerm(
            other
                .0
                .iter()
                .map(|&x| {
                    let y = self.0[x.unsigned_abs() as usize - 1];
                    if x < 0 {
                        -y
                    } else {
                        y
                    }
                })
                .collect(),
        )
    }

    pub fn inverse(&self) -> SignedPerm {
        let mut inv = vec![0; self.0.len()];
        for (j, &x) in self.0.iter().enumerate() {
            let k = x.unsigned_abs() as usize - 1;
            inv[k] = if x < 0 { -(j as i32 + 1) } else { j as i32 + 1 };
        }
        SignedPerm(inv)
    }

    pub fn act(&self, lambda: &[i64]) -> Vec<i64> {
        let mut out = vec![0; lambda.len()];
        for (j, &x) in self.0.iter().enumerate() {
            let k = x.unsigned_abs() as usize - 1;
            out[k] += if x < 0 { -lambda[j] } else { lambda[j] };
        }
        out
    }
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// The Weyl group of a root datum with lengths precomputed.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    datum: RootDatum,
    simple: Vec<SignedPerm>,
    positive: Vec<Vec<i64>>,
    elements: Vec<SignedPerm>,
    lengths: BTreeMap<SignedPerm, usize>,
}

impl WeylGroup {
    pub fn new(datum: RootDatum) -> Self {
        let l = datum.rank;
        let simple: Vec<SignedPerm> = (1..=l)
            .map(|i| {
                let images = (0..l)
                    .map(|j| {
                        let mut e = vec![0; l];
                        e[j] = 1;
                        let r = datum.reflect(i, &e);
                        let k = r.iter().position(|x| *x != 0).expect("reflection of a unit vector");
                        (k as i32 + 1) * r[k] as i32
                    })
                    .collect();
                SignedPerm(images)
            })
            .collect();
        let positive = datum.positive_roots();

        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([SignedPerm::identity(l)]);
        seen.insert(SignedPerm::identity(l));
        while let Some(w) = queue.pop_front() {
            for s in &simple {
                let u = w.mul(s);
                if seen.insert(u.clone()) {
                    queue.push_back(u);
                }
            }
        }
        let mut g = WeylGroup { datum, simple, positive, elements: Vec::new(), lengths: BTreeMap::new() };
        let mut elements: Vec<SignedPerm> = seen.into_iter().collect();
        let lengths: BTreeMap<SignedPerm, usize> =
            elements.iter().map(|w| (w.clone(), g.count_inversions(w))).collect();
        elements.sort_by(|a, b| lengths[a].cmp(&lengths[b]).then_with(|| a.cmp(b)));
        g.elements = elements;
        g.lengths = lengths;
        g
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank
    }

    /// All elements, sorted by length and then by images.
    pub fn elements(&self) -> &[SignedPerm] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, w: &SignedPerm) -> bool {
        self.lengths.contains_key(w)
    }

    pub fn identity(&self) -> SignedPerm {
        SignedPerm::identity(self.rank())
    }

    /// `s_i`, `1 <= i <= l`.
    pub fn simple_reflection(&self, i: usize) -> &SignedPerm {
        &self.simple[i - 1]
    }

    fn count_inversions(&self, w: &SignedPerm) -> usize {
        self.positive.iter().filter(|r| !is_positive(&w.act(r))).count()
    }

    /// Number of positive roots sent to negative ones.
    pub fn length(&self, w: &SignedPerm) -> usize {
        match self.lengths.get(w) {
            Some(l) => *l,
            None => self.count_inversions(w),
        }
    }

    /// `s_{i_1} ⋯ s_{i_k}`.
    pub fn word_element(&self, word: &[usize]) -> SignedPerm {
        word.iter().fold(self.identity(), |w, &i| w.mul(self.simple_reflection(i)))
    }

    /// The lexicographically smallest reduced word for `w`.
    pub fn reduced_word(&self, w: &SignedPerm) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = w.clone();
        let mut len = self.length(&cur);
        while len > 0 {
            let (i, next) = (1..=self.rank())
                .map(|i| (i, self.simple_reflection(i).mul(&cur)))
                .find(|(_, u)| self.length(u) < len)
                .expect("a nontrivial element has a left descent");
            word.push(i);
            cur = next;
            len -= 1;
        }
        word
    }

    pub fn is_reduced(&self, word: &[usize]) -> bool {
        self.length(&self.word_element(word)) == word.len()
    }

    /// Whether `l(w s_i) = l(w) + 1`.
    pub fn is_right_ascent(&self, w: &SignedPerm, i: usize) -> bool {
        self.length(&w.mul(self.simple_reflection(i))) > self.length(w)
    }

    pub fn longest_element(&self) -> SignedPerm {
        self.elements.last().expect("nonempty group").clone()
    }

    /// The parabolic subgroup generated by `s_i`, `i ∈ theta`.
    pub fn parabolic_subgroup(&self, theta: &[usize]) -> Vec<SignedPerm> {
        let mut seen = BTreeSet::from([self.identity()]);
        let mut queue = VecDeque::from([self.identity()]);
        while let Some(w) = queue.pop_front() {
            for &i in theta {
                let u = w.mul(self.simple_reflection(i));
                if seen.insert(u.clone()) {
                    queue.push_back(u);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// `W^P = { v : l(v s_i) = l(v) + 1 for all i ∈ theta }`, sorted like
    /// [`WeylGroup::elements`].
    pub fn coset_min_reps(&self, theta: &[usize]) -> Vec<SignedPerm> {
        self.elements
            .iter()
            .filter(|v| theta.iter().all(|&i| self.is_right_ascent(v, i)))
            .cloned()
            .collect()
    }

    /// Checks that `(u, v) ↦ uv` is a bijection `W^P × W_P → W` with
    /// `l(uv) = l(u) + l(v)`; returns a description of the first failure.
    pub fn check_coset_factorization(&self, theta: &[usize]) -> std::result::Result<(), String> {
        let reps = self.coset_min_reps(theta);
        let sub = self.parabolic_subgroup(theta);
        if reps.len() * sub.len() != self.order() {
            return Err(format!(
                "|W^P| · |W_P| = {} · {} != |W| = {}",
                reps.len(),
                sub.len(),
                self.order()
            ));
        }
        let mut hit = BTreeSet::new();
        for u in &reps {
            for v in &sub {
                let w = u.mul(v);
                if self.length(&w) != self.length(u) + self.length(v) {
                    return Err(format!("l({u}·{v}) != l({u}) + l({v})"));
                }
                if !hit.insert(w.clone()) {
                    return Err(format!("{w} is hit twice"));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(ty: RootType, l: usize) -> WeylGroup {
        WeylGroup::new(RootDatum::new(ty, l).unwrap())
    }

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn group_orders() {
        for l in 2..=4 {
            assert_eq!(group(RootType::B, l).order(), (1 << l) * factorial(l));
        }
        for l in 3..=4 {
            assert_eq!(group(RootType::D, l).order(), (1 << (l - 1)) * factorial(l));
        }
    }

    #[test]
    fn type_d_has_even_sign_changes() {
        let g = group(RootType::D, 4);
        assert!(g.elements().iter().all(|w| w.negative_signs() % 2 == 0));
    }

    #[test]
    fn cartan_matrices_match_dynkin_diagrams() {
        for (ty, l) in [(RootType::B, 2), (RootType::B, 3), (RootType::B, 4), (RootType::D, 3), (RootType::D, 4), (RootType::D, 5)] {
            let d = RootDatum::new(ty, l).unwrap();
            assert_eq!(d.cartan_matrix(), d.dynkin_cartan_matrix(), "{d}");
        }
    }

    #[test]
    fn longest_element_of_b() {
        for l in 2..=4 {
            let g = group(RootType::B, l);
            let w0 = g.longest_element();
            assert_eq!(w0.images(), (1..=l as i32).map(|x| -x).collect::<Vec<_>>().as_slice());
            assert_eq!(g.length(&w0), l * l);
        }
    }

    #[test]
    fn reduced_words() {
        let g = group(RootType::B, 2);
        assert_eq!(g.length(&g.longest_element()), 4);
        assert_eq!(g.reduced_word(&g.longest_element()), vec![1, 2, 1, 2]);
        assert!(!g.is_reduced(&[1, 1]));
        assert!(g.is_reduced(&[2, 1, 2, 1]));
        for w in g.elements() {
            let word = g.reduced_word(w);
            assert_eq!(g.word_element(&word), *w);
            assert_eq!(word.len(), g.length(w));
        }
    }

    #[test]
    fn braid_orders() {
        let b = RootDatum::new(RootType::B, 3).unwrap();
        assert_eq!(b.braid_order(1, 2), 3);
        assert_eq!(b.braid_order(2, 3), 4);
        assert_eq!(b.braid_order(1, 3), 2);
        let d = RootDatum::new(RootType::D, 4).unwrap();
        assert_eq!(d.braid_order(3, 4), 2);
        assert_eq!(d.braid_order(2, 4), 3);
    }

    #[test]
    fn coset_representatives() {
        let g = group(RootType::B, 2);
        assert_eq!(g.coset_min_reps(&[2]).len(), 4);
        let g3 = group(RootType::B, 3);
        assert_eq!(g3.coset_min_reps(&[2, 3]).len(), 6);
        assert_eq!(g3.coset_min_reps(&[1, 2, 3]), vec![g3.identity()]);
        assert!(g3.check_coset_factorization(&[2, 3]).is_ok());
    }

    #[test]
    fn inverse_and_action() {
        let g = group(RootType::B, 3);
        for w in g.elements() {
            assert_eq!(w.mul(&w.inverse()), g.identity());
            assert_eq!(g.length(w), g.length(&w.inverse()));
        }
        let s1 = g.simple_reflection(1);
        assert_eq!(s1.act(&[1, 0, 0]), vec![0, 1, 0]);
        let s3 = g.simple_reflection(3);
        assert_eq!(s3.act(&[0, 0, 1]), vec![0, 0, -1]);
    }
}
