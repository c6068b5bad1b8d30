//! Permutation groups backed by a base and strong generating set.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Largest group whose elements may be listed explicitly.
pub const ELEMENT_ENUM_CAP: u64 = 5000;
/// Largest index accepted by [`quotient`].
pub const QUOTIENT_DEGREE_CAP: u64 = 1000;

#[derive(Clone, Debug)]
struct Level {
    base_point: usize,
    /// `transversal[b]` maps the base point to `b`, for `b` in the basic orbit.
    transversal: Vec<Option<Permutation>>,
    orbit: Vec<usize>,
}

/// An immutable permutation group with a verified BSGS.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    strong_generators: Vec<Permutation>,
    levels: Vec<Level>,
    order: u64,
}

impl PermGroup {
    /// Runs deterministic Schreier–Sims on the given generators.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::format("degree must be positive"));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::format(format!(
                    "generator {g} has degree {}, expected {degree}",
                    g.degree()
                )));
            }
        }
        let mut group = PermGroup {
            degree,
            generators,
            strong_generators: Vec::new(),
            levels: Vec::new(),
            order: 1,
        };
        group.schreier_sims()?;
        Ok(group)
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).expect("trivial group")
    }

    fn schreier_sims(&mut self) -> Result<()> {
        let mut strong: Vec<Permutation> = Vec::new();
        let mut base: Vec<usize> = Vec::new();
        for g in &self.generators {
            if g.is_identity() || strong.contains(g) {
                continue;
            }
            if base.iter().all(|&b| g.image(b) == b) {
                base.push(g.first_moved_point().expect("non-identity"));
            }
            strong.push(g.clone());
        }
        let mut levels: Vec<Level> = Vec::with_capacity(base.len());
        for &b in &base {
            levels.push(Level {
                base_point: b,
                transversal: Vec::new(),
                orbit: Vec::new(),
            });
        }
        for i in (0..levels.len()).rev() {
            let gens = gens_fixing(&strong, &levels[..i]);
            compute_orbit(&mut levels[i], &gens, self.degree);
        }

        // Holt's formulation: work from the deepest level upwards, restarting
        // at the level where a new strong generator got stuck.
        let mut i = levels.len();
        while i > 0 {
            let level = i - 1;
            let gens = gens_fixing(&strong, &levels[..level]);
            compute_orbit(&mut levels[level], &gens, self.degree);
            let mut restart = None;
            'scan: for &b in &levels[level].orbit.clone() {
                let ub = levels[level].transversal[b].clone().expect("orbit point");
                for s in &gens {
                    let target = s.image(b);
                    let ut = levels[level].transversal[target]
                        .as_ref()
                        .expect("orbit closed");
                    let schreier = &(&ub * s) * &ut.inverse();
                    if schreier.is_identity() {
                        continue;
                    }
                    let (residue, stuck) = sift(&levels, &schreier, level + 1);
                    if residue.is_identity() {
                        continue;
                    }
                    strong.push(residue.clone());
                    if stuck == levels.len() {
                        levels.push(Level {
                            base_point: residue.first_moved_point().expect("non-identity"),
                            transversal: Vec::new(),
                            orbit: Vec::new(),
                        });
                    }
                    for j in (level + 1..=stuck).rev() {
                        let gj = gens_fixing(&strong, &levels[..j]);
                        compute_orbit(&mut levels[j], &gj, self.degree);
                    }
                    restart = Some(stuck + 1);
                    break 'scan;
                }
            }
            match restart {
                Some(r) => i = r,
                None => i -= 1,
            }
        }

        let mut order: u64 = 1;
        for level in &levels {
            order = order
                .checked_mul(level.orbit.len() as u64)
                .ok_or(Error::Capacity {
                    what: "group order",
                    limit: u64::MAX,
                    actual: u64::MAX,
                })?;
        }
        self.strong_generators = strong;
        self.levels = levels;
        self.order = order;
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong_generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    /// Sizes of the basic orbits along the base.
    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::Degree {
                expected: self.degree,
                found: p.degree(),
            });
        }
        let (residue, stuck) = sift(&self.levels, p, 0);
        Ok(stuck == self.levels.len() && residue.is_identity())
    }

    /// All elements in lexicographic order of their image arrays.
    pub fn elements(&self) -> Result<Vec<Permutation>> {
        if self.order > ELEMENT_ENUM_CAP {
            return Err(Error::Capacity {
                what: "element enumeration",
                limit: ELEMENT_ENUM_CAP,
                actual: self.order,
            });
        }
        // Every element is u_k * ... * u_1 * u_0 with u_i from level i.
        let mut elements = vec![self.identity()];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(elements.len() * level.orbit.len());
            for e in &elements {
                for &b in &level.orbit {
                    let u = level.transversal[b].as_ref().expect("orbit point");
                    next.push(e * u);
                }
            }
            elements = next;
        }
        elements.sort();
        Ok(elements)
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> Result<u64> {
        Ok(self
            .elements()?
            .iter()
            .fold(1, |acc, g| crate::arith::lcm(acc, g.order())))
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i + 1..].iter().all(|b| (a * b) == (b * a)))
    }

    /// True when every generator of `other` lies in `self`.
    pub fn contains_group(&self, other: &PermGroup) -> Result<bool> {
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_normal_subgroup(&self, n: &PermGroup) -> Result<bool> {
        if !self.contains_group(n)? {
            return Ok(false);
        }
        for g in &self.generators {
            for x in n.generators() {
                if !n.contains(&x.conjugate_by(g))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Same degree and the same element set.
    pub fn same_group(&self, other: &PermGroup) -> Result<bool> {
        Ok(self.order == other.order && self.contains_group(other)?)
    }
}

fn gens_fixing(strong: &[Permutation], prefix: &[Level]) -> Vec<Permutation> {
    strong
        .iter()
        .filter(|s| prefix.iter().all(|l| s.image(l.base_point) == l.base_point))
        .cloned()
        .collect()
}

fn compute_orbit(level: &mut Level, gens: &[Permutation], degree: usize) {
    let mut transversal: Vec<Option<Permutation>> = vec![None; degree];
    transversal[level.base_point] = Some(Permutation::identity(degree));
    let mut orbit = vec![level.base_point];
    let mut k = 0;
    while k < orbit.len() {
        let x = orbit[k];
        let ux = transversal[x].clone().expect("orbit point");
        for s in gens {
            let y = s.image(x);
            if transversal[y].is_none() {
                transversal[y] = Some(&ux * s);
                orbit.push(y);
            }
        }
        k += 1;
    }
    level.transversal = transversal;
    level.orbit = orbit;
}

/// Strips `g` through `levels[start..]`; returns the residue and the level
/// where stripping stopped (`levels.len()` when it ran through every level).
fn sift(levels: &[Level], g: &Permutation, start: usize) -> (Permutation, usize) {
    let mut h = g.clone();
    for (j, level) in levels.iter().enumerate().skip(start) {
        let b = h.image(level.base_point);
        match &level.transversal[b] {
            Some(u) => h = &h * &u.inverse(),
            None => return (h, j),
        }
    }
    (h, levels.len())
}

/// `⟨g⁻¹ h g : h ∈ generators(H)⟩`, after checking `g ∈ inside`.
pub fn conjugate(h: &PermGroup, g: &Permutation, inside: &PermGroup) -> Result<PermGroup> {
    if !inside.contains(g)? {
        return Err(Error::Membership(format!(
            "conjugating element {g} is not in the ambient group"
        )));
    }
    let gens = h.generators().iter().map(|x| x.conjugate_by(g)).collect();
    PermGroup::new(h.degree(), gens)
}

/// External direct product acting on disjoint point sets.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let ia = a.identity();
    let ib = b.identity();
    let mut gens: Vec<Permutation> = a.generators().iter().map(|g| g.direct_sum(&ib)).collect();
    gens.extend(b.generators().iter().map(|g| ia.direct_sum(g)));
    PermGroup::new(a.degree() + b.degree(), gens).expect("direct product of valid groups")
}

/// A homomorphism determined by images of the source generators.
///
/// Construction walks the Cayley graph of the source and rejects
/// assignments that do not extend to a homomorphism.
#[derive(Clone, Debug)]
pub struct Homomorphism {
    source: PermGroup,
    target: PermGroup,
    generator_images: Vec<Permutation>,
    map: HashMap<Permutation, Permutation>,
}

impl Homomorphism {
    pub fn new(
        source: PermGroup,
        target: PermGroup,
        generator_images: Vec<Permutation>,
    ) -> Result<Self> {
        if generator_images.len() != source.generators().len() {
            return Err(Error::argument(
                "one image per source generator is required",
            ));
        }
        for img in &generator_images {
            if !target.contains(img)? {
                return Err(Error::Membership(format!(
                    "generator image {img} is not in the target"
                )));
            }
        }
        if source.order() > ELEMENT_ENUM_CAP {
            return Err(Error::Capacity {
                what: "homomorphism source",
                limit: ELEMENT_ENUM_CAP,
                actual: source.order(),
            });
        }
        let mut map = HashMap::with_capacity(source.order() as usize);
        map.insert(source.identity(), target.identity());
        let mut queue = VecDeque::from([source.identity()]);
        while let Some(x) = queue.pop_front() {
            let fx = map[&x].clone();
            for (s, fs) in source.generators().iter().zip(&generator_images) {
                let y = &x * s;
                let fy = &fx * fs;
                match map.get(&y) {
                    Some(existing) if existing != &fy => {
                        return Err(Error::argument(format!(
                            "generator images do not define a homomorphism (conflict at {y})"
                        )));
                    }
                    Some(_) => {}
                    None => {
                        map.insert(y.clone(), fy);
                        queue.push_back(y);
                    }
                }
            }
        }
        Ok(Homomorphism {
            source,
            target,
            generator_images,
            map,
        })
    }

    pub fn source(&self) -> &PermGroup {
        &self.source
    }

    pub fn target(&self) -> &PermGroup {
        &self.target
    }

    pub fn generator_images(&self) -> &[Permutation] {
        &self.generator_images
    }

    pub fn image(&self, g: &Permutation) -> Result<Permutation> {
        self.map
            .get(g)
            .cloned()
            .ok_or_else(|| Error::Membership(format!("{g} is not in the homomorphism source")))
    }

    /// Image of a subgroup of the source.
    pub fn image_of(&self, h: &PermGroup) -> Result<PermGroup> {
        let gens = h
            .generators()
            .iter()
            .map(|g| self.image(g))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(self.target.degree(), gens)
    }

    /// Preimage of the identity, with a greedily chosen generating set.
    pub fn kernel(&self) -> PermGroup {
        let mut members: Vec<&Permutation> = self
            .map
            .iter()
            .filter(|(_, img)| img.is_identity())
            .map(|(g, _)| g)
            .collect();
        members.sort();
        let mut kernel = PermGroup::trivial(self.source.degree());
        for g in members {
            if !kernel.contains(g).expect("same degree") {
                let mut gens = kernel.generators().to_vec();
                gens.push(g.clone());
                kernel = PermGroup::new(self.source.degree(), gens).expect("valid generators");
            }
        }
        kernel
    }
}

/// `G/N` realised by the action of `G` on the right cosets of `N`.
pub fn quotient(g: &PermGroup, n: &PermGroup) -> Result<(PermGroup, Homomorphism)> {
    if n.degree() != g.degree() {
        return Err(Error::Degree {
            expected: g.degree(),
            found: n.degree(),
        });
    }
    if !g.is_normal_subgroup(n)? {
        return Err(Error::Normality(
            "quotient requires a normal subgroup".into(),
        ));
    }
    let index = g.order() / n.order();
    if index > QUOTIENT_DEGREE_CAP {
        return Err(Error::Capacity {
            what: "quotient degree",
            limit: QUOTIENT_DEGREE_CAP,
            actual: index,
        });
    }
    let elements = g.elements()?;
    let n_elements = n.elements()?;
    // Label each right coset Nx by first appearance in lexicographic order.
    let mut coset_of: HashMap<Permutation, usize> = HashMap::with_capacity(elements.len());
    let mut reps: Vec<Permutation> = Vec::with_capacity(index as usize);
    for x in &elements {
        if coset_of.contains_key(x) {
            continue;
        }
        let label = reps.len();
        for m in &n_elements {
            coset_of.insert(m * x, label);
        }
        reps.push(x.clone());
    }
    let degree = reps.len();
    debug_assert_eq!(degree as u64, index);
    let act = |s: &Permutation| -> Permutation {
        let images = reps.iter().map(|r| coset_of[&(r * s)]).collect();
        Permutation::from_images(images).expect("coset action is a bijection")
    };
    let images: Vec<Permutation> = g.generators().iter().map(act).collect();
    let target = PermGroup::new(degree, images.clone())?;
    let hom = Homomorphism::new(g.clone(), target.clone(), images)?;
    Ok((target, hom))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    fn s(n: usize) -> PermGroup {
        let full: Vec<usize> = (0..n).collect();
        PermGroup::new(n, vec![cyc(n, &[&full]), cyc(n, &[&[0, 1]])]).unwrap()
    }

    #[test]
    fn symmetric_group_order() {
        assert_eq!(s(5).order(), 120);
        assert_eq!(PermGroup::trivial(1).order(), 1);
        assert_eq!(s(7).order(), 5040);
    }

    #[test]
    fn frobenius_twenty_order() {
        let g = PermGroup::new(
            5,
            vec![cyc(5, &[&[0, 1, 2, 3, 4]]), cyc(5, &[&[1, 2, 4, 3]])],
        )
        .unwrap();
        assert_eq!(g.order(), 20);
    }

    #[test]
    fn membership() {
        let s4 = s(4);
        assert!(s4.contains(&cyc(4, &[&[0, 1, 2]])).unwrap());
        let a4 = PermGroup::new(4, vec![cyc(4, &[&[0, 1, 2]]), cyc(4, &[&[1, 2, 3]])]).unwrap();
        assert_eq!(a4.order(), 12);
        assert!(!a4.contains(&cyc(4, &[&[0, 1]])).unwrap());
        assert!(a4.contains(&Permutation::identity(5)).is_err());
        for g in a4.elements().unwrap() {
            assert!(a4.contains(&g).unwrap());
        }
    }

    #[test]
    fn elements_sorted_and_complete() {
        let s3 = s(3);
        let els = s3.elements().unwrap();
        assert_eq!(els.len(), 6);
        assert!(els.windows(2).all(|w| w[0] < w[1]));
        assert!(els[0].is_identity());
    }

    #[test]
    fn element_cap() {
        assert!(matches!(s(8).elements(), Err(Error::Capacity { .. })));
    }

    #[test]
    fn exponents() {
        assert_eq!(s(3).exponent().unwrap(), 6);
        let z4z2 = PermGroup::new(6, vec![cyc(6, &[&[0, 1, 2, 3]]), cyc(6, &[&[4, 5]])]).unwrap();
        assert_eq!(z4z2.exponent().unwrap(), 4);
    }

    #[test]
    fn conjugation() {
        let s3 = s(3);
        let h = PermGroup::new(3, vec![cyc(3, &[&[0, 1]])]).unwrap();
        let c = conjugate(&h, &cyc(3, &[&[1, 2]]), &s3).unwrap();
        assert!(c.contains(&cyc(3, &[&[0, 2]])).unwrap());
        assert_eq!(c.order(), 2);
        let same = conjugate(&h, &Permutation::identity(3), &s3).unwrap();
        assert!(same.same_group(&h).unwrap());
        let a3 = PermGroup::new(3, vec![cyc(3, &[&[0, 1, 2]])]).unwrap();
        assert!(matches!(
            conjugate(&h, &cyc(3, &[&[1, 2]]), &a3),
            Err(Error::Membership(_))
        ));
    }

    #[test]
    fn quotient_by_alternating() {
        let s4 = s(4);
        let a4 = PermGroup::new(4, vec![cyc(4, &[&[0, 1, 2]]), cyc(4, &[&[1, 2, 3]])]).unwrap();
        let (q, hom) = quotient(&s4, &a4).unwrap();
        assert_eq!(q.order(), 2);
        assert!(hom.kernel().same_group(&a4).unwrap());
        let d = PermGroup::new(4, vec![cyc(4, &[&[0, 1, 2, 3]]), cyc(4, &[&[0, 2]])]).unwrap();
        assert!(matches!(quotient(&s4, &d), Err(Error::Normality(_))));
    }

    #[test]
    fn quotient_by_trivial_preserves_order() {
        let s4 = s(4);
        let (q, hom) = quotient(&s4, &PermGroup::trivial(4)).unwrap();
        assert_eq!(q.order(), 24);
        assert_eq!(hom.kernel().order(), 1);
    }

    #[test]
    fn bad_homomorphism_rejected() {
        let z3 = PermGroup::new(3, vec![cyc(3, &[&[0, 1, 2]])]).unwrap();
        let z2 = PermGroup::new(2, vec![cyc(2, &[&[0, 1]])]).unwrap();
        assert!(Homomorphism::new(z3, z2, vec![cyc(2, &[&[0, 1]])]).is_err());
    }
}
