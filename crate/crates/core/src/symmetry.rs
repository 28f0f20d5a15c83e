//! Variable permutations preserving a monomial ideal, restricted to the
//! subgroup generated by twins.
//!
//! Two variables are twins when swapping them maps the generator set onto
//! itself; twin classes are the equivalence classes (a product of two twin
//! transpositions sharing a variable conjugates to the third). Two classes
//! of equal size are interchangeable when the order-preserving swap of
//! their members is an automorphism. The group generated is
//! `∏_groups S_m ≀ S_k`, so a multidegree is canonical when it is
//! nonincreasing inside every class and the class blocks are
//! nonincreasing inside every interchangeable group.
//!
//! Graded pieces of local cohomology and Betti numbers are invariant under
//! automorphisms, so scanning canonical multidegrees decides every
//! existence question exactly.

use std::collections::HashSet;

use itertools::Itertools;

use crate::complex::Vertex;
use crate::ideal::MonomialIdeal;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Symmetry {
    n: u32,
    /// Twin classes, each sorted, ordered by smallest member.
    classes: Vec<Vec<Vertex>>,
    /// Indices into `classes`; each group lists interchangeable classes.
    groups: Vec<Vec<usize>>,
}

impl Symmetry {
    pub fn trivial(n: u32) -> Self {
        Symmetry { n, classes: (1..=n).map(|v| vec![v]).collect(), groups: (0..n as usize).map(|c| vec![c]).collect() }
    }

    pub fn of_ideal(ideal: &MonomialIdeal) -> Self {
        let n = ideal.n();
        let gens: HashSet<&[u32]> = ideal.generators().iter().map(|g| g.exponents()).collect();
        let preserves = |perm: &[usize]| {
            ideal.generators().iter().all(|g| {
                let e = g.exponents();
                let image: Vec<u32> = (0..e.len()).map(|j| e[perm[j]]).collect();
                gens.contains(image.as_slice())
            })
        };
        let identity: Vec<usize> = (0..n as usize).collect();

        let mut classes: Vec<Vec<Vertex>> = Vec::new();
        for v in 1..=n {
            let home = classes.iter_mut().find(|class| {
                let mut perm = identity.clone();
                perm.swap(class[0] as usize - 1, v as usize - 1);
                preserves(&perm)
            });
            match home {
                Some(class) => class.push(v),
                None => classes.push(vec![v]),
            }
        }

        let mut groups: Vec<Vec<usize>> = Vec::new();
        for c in 0..classes.len() {
            let home = groups.iter_mut().find(|group| {
                let (a, b) = (&classes[group[0]], &classes[c]);
                a.len() == b.len() && {
                    let mut perm = identity.clone();
                    for (&x, &y) in a.iter().zip(b) {
                        perm.swap(x as usize - 1, y as usize - 1);
                    }
                    preserves(&perm)
                }
            });
            match home {
                Some(group) => group.push(c),
                None => groups.push(vec![c]),
            }
        }
        Symmetry { n, classes, groups }
    }

    pub fn classes(&self) -> &[Vec<Vertex>] {
        &self.classes
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    /// Order of the group.
    pub fn order(&self) -> u128 {
        self.groups
            .iter()
            .map(|g| factorial(g.len()) * factorial(self.classes[g[0]].len()).pow(g.len() as u32))
            .product()
    }

    /// The canonical member of the orbit of `a`.
    pub fn canonical(&self, a: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.n as usize];
        for group in &self.groups {
            let mut blocks: Vec<Vec<i64>> = group
                .iter()
                .map(|&c| {
                    let mut block: Vec<i64> = self.classes[c].iter().map(|&v| a[v as usize - 1]).collect();
                    block.sort_unstable_by(|x, y| y.cmp(x));
                    block
                })
                .collect();
            blocks.sort_unstable_by(|x, y| y.cmp(x));
            for (&c, block) in group.iter().zip(blocks) {
                for (&v, x) in self.classes[c].iter().zip(block) {
                    out[v as usize - 1] = x;
                }
            }
        }
        out
    }

    /// Canonical multidegrees of the box `lo..=hi[j]` with their orbit
    /// sizes, in lexicographically decreasing block order. `hi` must be
    /// constant on every group, which holds for any automorphism-invariant
    /// bound such as the maximal exponents.
    pub fn representatives(&self, lo: i64, hi: &[i64]) -> Vec<(Vec<i64>, u128)> {
        let per_group: Vec<Vec<(Vec<Vec<i64>>, u128)>> = self
            .groups
            .iter()
            .map(|group| {
                let size = self.classes[group[0]].len();
                let top = hi[self.classes[group[0]][0] as usize - 1];
                debug_assert!(group.iter().flat_map(|&c| &self.classes[c]).all(|&v| hi[v as usize - 1] == top));
                let blocks: Vec<Vec<i64>> =
                    if top < lo { Vec::new() } else { (lo..=top).rev().combinations_with_replacement(size).collect() };
                let block_orbit: Vec<u128> = blocks.iter().map(|b| multinomial(b)).collect();
                (0..blocks.len())
                    .combinations_with_replacement(group.len())
                    .map(|choice| {
                        let orbit = multinomial(&choice) * choice.iter().map(|&i| block_orbit[i]).product::<u128>();
                        (choice.into_iter().map(|i| blocks[i].clone()).collect(), orbit)
                    })
                    .collect()
            })
            .collect();
        if per_group.iter().any(|g| g.is_empty()) {
            return Vec::new();
        }
        per_group
            .into_iter()
            .multi_cartesian_product()
            .map(|choice| {
                let mut a = vec![0; self.n as usize];
                let mut orbit = 1u128;
                for (group, (blocks, size)) in self.groups.iter().zip(choice) {
                    orbit *= size;
                    for (&c, block) in group.iter().zip(blocks) {
                        for (&v, x) in self.classes[c].iter().zip(block) {
                            a[v as usize - 1] = x;
                        }
                    }
                }
                (a, orbit)
            })
            .collect()
    }
}

fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

/// Number of distinct arrangements of a sorted sequence.
fn multinomial<T: PartialEq>(sorted: &[T]) -> u128 {
    let mut out = factorial(sorted.len());
    for run in sorted.chunk_by(|x, y| x == y) {
        out /= factorial(run.len());
    }
    out
}
