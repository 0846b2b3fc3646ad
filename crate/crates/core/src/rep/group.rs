//! Finite groups presented by permutation generators, with a full
//! element enumeration and conjugacy classes.

use std::collections::HashMap;

use super::RepError;

const CLOSURE_CAP: usize = 10_000;

/// A permutation of {0, .., n-1} stored as its image vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    img: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            img: (0..n).collect(),
        }
    }

    /// From 1-based images as they appear in JSON input.
    pub fn from_one_based(img: &[usize]) -> Result<Self, RepError> {
        let n = img.len();
        let mut seen = vec![false; n];
        for &v in img {
            if v == 0 || v > n || std::mem::replace(&mut seen[v - 1], true) {
                return Err(RepError::BadPermutation);
            }
        }
        Ok(Perm {
            img: img.iter().map(|&v| v - 1).collect(),
        })
    }

    pub fn from_zero_based(img: Vec<usize>) -> Result<Self, RepError> {
        let n = img.len();
        let mut seen = vec![false; n];
        for &v in &img {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(RepError::BadPermutation);
            }
        }
        Ok(Perm { img })
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.img[i]
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.img.iter().map(|&v| v + 1).collect()
    }

    /// Composition `self * other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree());
        Perm {
            img: other.img.iter().map(|&v| self.img[v]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut img = vec![0; self.img.len()];
        for (i, &v) in self.img.iter().enumerate() {
            img[v] = i;
        }
        Perm { img }
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &v)| i == v)
    }
}

/// A finite permutation group with its elements enumerated breadth
/// first (identity first) and conjugacy classes precomputed.
///
/// Equality compares degree and generator lists; everything else is
/// derived from those.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    /// For each non-identity element k: (predecessor index, generator
    /// index) with elements[k] = elements[pred] * gen.
    words: Vec<Option<(usize, usize)>>,
    index: HashMap<Perm, usize>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self, RepError> {
        for g in &generators {
            if g.degree() != degree {
                return Err(RepError::BadPermutation);
            }
        }
        let identity = Perm::identity(degree);
        let mut elements = vec![identity.clone()];
        let mut words: Vec<Option<(usize, usize)>> = vec![None];
        let mut index = HashMap::new();
        index.insert(identity, 0usize);
        let mut cursor = 0;
        while cursor < elements.len() {
            for (gi, g) in generators.iter().enumerate() {
                let w = elements[cursor].compose(g);
                if !index.contains_key(&w) {
                    index.insert(w.clone(), elements.len());
                    elements.push(w);
                    words.push(Some((cursor, gi)));
                    if elements.len() > CLOSURE_CAP {
                        return Err(RepError::ClosureCap(CLOSURE_CAP));
                    }
                }
            }
            cursor += 1;
        }

        let n = elements.len();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let cid = classes.len();
            let mut orbit = vec![start];
            class_of[start] = cid;
            let mut head = 0;
            while head < orbit.len() {
                let x = &elements[orbit[head]];
                for g in &generators {
                    let conj = g.compose(x).compose(&g.inverse());
                    let ci = index[&conj];
                    if class_of[ci] == usize::MAX {
                        class_of[ci] = cid;
                        orbit.push(ci);
                    }
                }
                head += 1;
            }
            orbit.sort_unstable();
            classes.push(orbit);
        }

        Ok(PermGroup {
            degree,
            generators,
            elements,
            words,
            index,
            classes,
            class_of,
        })
    }

    /// Symmetric group S_n acting on n points.
    pub fn symmetric(n: usize) -> Self {
        assert!(n >= 1);
        let mut gens = Vec::new();
        if n >= 2 {
            let mut t: Vec<usize> = (0..n).collect();
            t.swap(0, 1);
            gens.push(Perm { img: t });
        }
        if n >= 3 {
            let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
            gens.push(Perm { img: cycle });
        }
        PermGroup::new(n, gens).expect("symmetric group closure")
    }

    /// Cyclic group Z/n as the n-cycle.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let gens = if n == 1 {
            Vec::new()
        } else {
            vec![Perm {
                img: (0..n).map(|i| (i + 1) % n).collect(),
            }]
        };
        PermGroup::new(n, gens).expect("cyclic group closure")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn order(&self) -> usize {
        self.elements.len()
    }
    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }
    pub fn class_of(&self, elem: usize) -> usize {
        self.class_of[elem]
    }

    /// (predecessor, generator) for each non-identity element in BFS
    /// order; the identity has no word.
    pub fn word(&self, elem: usize) -> Option<(usize, usize)> {
        self.words[elem]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].compose(&self.elements[b])]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.index[&self.elements[a].inverse()]
    }
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.generators == other.generators
    }
}

impl Eq for PermGroup {}
