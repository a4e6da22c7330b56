//! Deterministic Schreier–Sims, used only to compute the order of a
//! generated subgroup.

use crate::perm::Perm;

struct Level {
    base: usize,
    /// Strong generators first introduced at this level; the stabilizer at
    /// this level is generated by these together with those of deeper levels.
    gens: Vec<Perm>,
    /// `transversal[b]` maps the base point to `b`.
    transversal: Vec<Option<Perm>>,
    orbit: Vec<usize>,
}

pub(crate) struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub(crate) fn new(degree: usize, gens: &[Perm]) -> Self {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        for g in gens {
            chain.rebuild_orbits();
            let (h, j) = chain.sift(g.clone(), 0);
            if !h.is_identity() {
                chain.push_generator(j, h);
            }
        }
        while chain.close_once() {}
        chain
    }

    pub(crate) fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    fn push_generator(&mut self, j: usize, h: Perm) {
        if j == self.levels.len() {
            let base = (0..self.degree)
                .find(|&x| h.apply(x + 1) != x + 1)
                .expect("non-identity residue");
            self.levels.push(Level {
                base,
                gens: Vec::new(),
                transversal: Vec::new(),
                orbit: Vec::new(),
            });
        }
        self.levels[j].gens.push(h);
    }

    fn gens_from(&self, k: usize) -> Vec<Perm> {
        self.levels[k..].iter().flat_map(|l| l.gens.iter().cloned()).collect()
    }

    fn rebuild_orbits(&mut self) {
        for k in 0..self.levels.len() {
            let gens = self.gens_from(k);
            let level = &mut self.levels[k];
            level.transversal = vec![None; self.degree];
            level.transversal[level.base] = Some(Perm::identity(self.degree));
            level.orbit = vec![level.base];
            let mut i = 0;
            while i < level.orbit.len() {
                let p = level.orbit[i];
                for s in &gens {
                    let q = s.apply(p + 1) - 1;
                    if level.transversal[q].is_none() {
                        let u = s.compose(level.transversal[p].as_ref().unwrap());
                        level.transversal[q] = Some(u);
                        level.orbit.push(q);
                    }
                }
                i += 1;
            }
        }
    }

    /// Strips `h` through the levels starting at `from`. Returns the residue
    /// and the level at which stripping stopped.
    fn sift(&self, mut h: Perm, from: usize) -> (Perm, usize) {
        for (k, level) in self.levels.iter().enumerate().skip(from) {
            let b = h.apply(level.base + 1) - 1;
            match &level.transversal[b] {
                Some(u) => h = u.inverse().compose(&h),
                None => return (h, k),
            }
        }
        let len = self.levels.len();
        (h, len)
    }

    /// Tests every Schreier generator, deepest level first. Adds the first
    /// non-sifting residue and reports whether anything changed.
    fn close_once(&mut self) -> bool {
        self.rebuild_orbits();
        for k in (0..self.levels.len()).rev() {
            let gens = self.gens_from(k);
            let level = &self.levels[k];
            for &b in &level.orbit {
                let u_b = level.transversal[b].as_ref().unwrap();
                for s in &gens {
                    let sb = s.apply(b + 1) - 1;
                    let u_sb = level.transversal[sb].as_ref().unwrap();
                    let schreier = u_sb.inverse().compose(&s.compose(u_b));
                    let (h, j) = self.sift(schreier, k + 1);
                    if !h.is_identity() {
                        self.push_generator(j, h);
                        return true;
                    }
                }
            }
        }
        false
    }
}
