use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::report::ValidationReport;

use super::{build_icat, CategoryModel, InternalCat};

/// An ordinary finite category with arrows numbered `0..`.
#[derive(Clone, Debug, PartialEq)]
pub struct FinCat {
    pub objects: Vec<String>,
    pub arrow_names: Vec<String>,
    /// `(source, target)` per arrow
    pub arrows: Vec<(usize, usize)>,
    pub identities: Vec<usize>,
    /// `(f, g) -> g ∘ f` for composable pairs
    pub comp: HashMap<(usize, usize), usize>,
}

impl FinCat {
    /// The category generated by a finite preorder on `n` objects
    /// (reflexive-transitive closure of `le`).
    pub fn preorder<S: AsRef<str>>(names: &[S], le: &[(usize, usize)]) -> FinCat {
        let n = names.len();
        let mut r = vec![vec![false; n]; n];
        for (i, row) in r.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in le {
            r[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if r[i][k] && r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
        let objects: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let mut arrows = Vec::new();
        let mut pos = HashMap::new();
        for i in 0..n {
            for j in 0..n {
                if r[i][j] {
                    pos.insert((i, j), arrows.len());
                    arrows.push((i, j));
                }
            }
        }
        let arrow_names = arrows.iter().map(|&(i, j)| format!("{}{}", objects[i], objects[j])).collect();
        let identities = (0..n).map(|i| pos[&(i, i)]).collect();
        let mut comp = HashMap::new();
        for (f, &(a, b)) in arrows.iter().enumerate() {
            for (g, &(b2, c)) in arrows.iter().enumerate() {
                if b == b2 {
                    comp.insert((f, g), pos[&(a, c)]);
                }
            }
        }
        FinCat { objects, arrow_names, arrows, identities, comp }
    }

    fn numbered(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    /// The poset `[n] = {0 < 1 < … < n}`.
    pub fn chain(n: usize) -> FinCat {
        let le: Vec<_> = (0..n).map(|i| (i, i + 1)).collect();
        FinCat::preorder(&FinCat::numbered(n + 1), &le)
    }

    /// Only identities.
    pub fn discrete(n: usize) -> FinCat {
        FinCat::preorder(&FinCat::numbered(n), &[])
    }

    /// The contractible groupoid on `n` objects; `chaotic(2)` is the
    /// free-living isomorphism.
    pub fn chaotic(n: usize) -> FinCat {
        let le: Vec<_> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        FinCat::preorder(&FinCat::numbered(n), &le)
    }

    /// The cyclic group `Z/k` as a one-object groupoid.
    pub fn cyclic_group(k: usize) -> FinCat {
        let k = k.max(1);
        let mut comp = HashMap::new();
        for a in 0..k {
            for b in 0..k {
                comp.insert((a, b), (a + b) % k);
            }
        }
        FinCat {
            objects: vec!["*".into()],
            arrow_names: (0..k).map(|a| format!("g{a}")).collect(),
            arrows: vec![(0, 0); k],
            identities: vec![0],
            comp,
        }
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn source(&self, f: usize) -> usize {
        self.arrows[f].0
    }

    pub fn target(&self, f: usize) -> usize {
        self.arrows[f].1
    }

    /// `g ∘ f`
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.comp.get(&(f, g)).copied()
    }

    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&f| self.arrows[f] == (a, b)).collect()
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        let (a, b) = self.arrows[f];
        self.hom(b, a).into_iter().find(|&g| {
            self.compose(f, g) == Some(self.identities[a]) && self.compose(g, f) == Some(self.identities[b])
        })
    }

    pub fn is_groupoid(&self) -> bool {
        (0..self.arrows.len()).all(|f| self.inverse(f).is_some())
    }

    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::default();
        let n = self.objects.len();
        if self.identities.len() != n || self.arrow_names.len() != self.arrows.len() {
            rep.push("well-formed", "category", "table sizes disagree");
            return rep;
        }
        for (a, &i) in self.identities.iter().enumerate() {
            if i >= self.arrows.len() || self.arrows[i] != (a, a) {
                rep.push("identity endpoints", &self.objects[a], "identity is not an endomorphism");
                return rep;
            }
        }
        for f in 0..self.arrows.len() {
            for g in 0..self.arrows.len() {
                let composable = self.target(f) == self.source(g);
                match (composable, self.compose(f, g)) {
                    (true, None) => rep.push("composition total", self.pair_name(f, g), "missing"),
                    (false, Some(_)) => rep.push("composition typed", self.pair_name(f, g), "not composable"),
                    (true, Some(h)) if self.arrows[h] != (self.source(f), self.target(g)) => {
                        rep.push("composite endpoints", self.pair_name(f, g), &self.arrow_names[h])
                    }
                    _ => {}
                }
            }
        }
        if !rep.is_valid() {
            return rep;
        }
        for f in 0..self.arrows.len() {
            let (a, b) = self.arrows[f];
            if self.compose(self.identities[a], f) != Some(f) || self.compose(f, self.identities[b]) != Some(f) {
                rep.push("unit laws", &self.arrow_names[f], "identity composite differs");
            }
            for g in 0..self.arrows.len() {
                let Some(fg) = self.compose(f, g) else { continue };
                for h in 0..self.arrows.len() {
                    let Some(gh) = self.compose(g, h) else { continue };
                    if self.compose(fg, h) != self.compose(f, gh) {
                        rep.push(
                            "associativity",
                            format!("({}, {}, {})", self.arrow_names[f], self.arrow_names[g], self.arrow_names[h]),
                            "differs",
                        );
                    }
                }
            }
        }
        rep
    }

    fn pair_name(&self, f: usize, g: usize) -> String {
        format!("({}, {})", self.arrow_names[f], self.arrow_names[g])
    }

    /// The internal category with discrete (constant) object and arrow sets.
    pub fn to_icat(&self, trunc_dim: usize) -> InternalCat {
        build_icat(self, trunc_dim).cat
    }

    pub fn product(&self, other: &FinCat) -> FinCat {
        let no = other.objects.len();
        let na = other.arrows.len();
        let objects = self
            .objects
            .iter()
            .flat_map(|a| other.objects.iter().map(move |b| format!("({a},{b})")))
            .collect();
        let arrow_names = self
            .arrow_names
            .iter()
            .flat_map(|a| other.arrow_names.iter().map(move |b| format!("({a},{b})")))
            .collect();
        let arrows = self
            .arrows
            .iter()
            .flat_map(|&(s1, t1)| other.arrows.iter().map(move |&(s2, t2)| (s1 * no + s2, t1 * no + t2)))
            .collect();
        let identities =
            self.identities.iter().flat_map(|&i| other.identities.iter().map(move |&j| i * na + j)).collect();
        let mut comp = HashMap::new();
        for (&(f1, g1), &h1) in &self.comp {
            for (&(f2, g2), &h2) in &other.comp {
                comp.insert((f1 * na + f2, g1 * na + g2), h1 * na + h2);
            }
        }
        FinCat { objects, arrow_names, arrows, identities, comp }
    }

    /// All functors `self -> other` as (object map, arrow map).
    pub fn functors(&self, other: &FinCat, budget: u64) -> Result<Vec<(Vec<usize>, Vec<usize>)>> {
        let mut by_src = vec![Vec::new(); other.objects.len()];
        let mut by_tgt = vec![Vec::new(); other.objects.len()];
        let mut homs: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (g, &(s, t)) in other.arrows.iter().enumerate() {
            by_src[s].push(g);
            by_tgt[t].push(g);
            homs.entry((s, t)).or_default().push(g);
        }
        // non-identity arrows, ordered so that each one touches an earlier
        // endpoint where possible
        let is_id: Vec<bool> = {
            let mut v = vec![false; self.arrows.len()];
            for &i in &self.identities {
                v[i] = true;
            }
            v
        };
        let mut order = Vec::new();
        let mut seen_ob = vec![false; self.objects.len()];
        let mut used = vec![false; self.arrows.len()];
        for start in 0..self.objects.len() {
            if seen_ob[start] {
                continue;
            }
            seen_ob[start] = true;
            let mut changed = true;
            while changed {
                changed = false;
                for (f, &(a, b)) in self.arrows.iter().enumerate() {
                    if !is_id[f] && !used[f] && (seen_ob[a] || seen_ob[b]) {
                        used[f] = true;
                        seen_ob[a] = true;
                        seen_ob[b] = true;
                        order.push(f);
                        changed = true;
                    }
                }
            }
        }
        let mut st = FunctorSearch {
            b: self,
            e: other,
            order,
            by_src,
            by_tgt,
            homs,
            ob: vec![usize::MAX; self.objects.len()],
            ar: vec![usize::MAX; self.arrows.len()],
            out: Vec::new(),
            spent: 0,
            budget,
        };
        st.arrow_step(0)?;
        Ok(st.out)
    }
}

struct FunctorSearch<'a> {
    b: &'a FinCat,
    e: &'a FinCat,
    order: Vec<usize>,
    by_src: Vec<Vec<usize>>,
    by_tgt: Vec<Vec<usize>>,
    homs: HashMap<(usize, usize), Vec<usize>>,
    ob: Vec<usize>,
    ar: Vec<usize>,
    out: Vec<(Vec<usize>, Vec<usize>)>,
    spent: u64,
    budget: u64,
}

impl FunctorSearch<'_> {
    fn tick(&mut self) -> Result<()> {
        self.spent += 1;
        if self.spent > self.budget {
            return Err(Error::Budget("functor enumeration".into()));
        }
        Ok(())
    }

    fn set_ob(&mut self, a: usize, y: usize) {
        self.ob[a] = y;
        self.ar[self.b.identities[a]] = self.e.identities[y];
    }

    fn unset_ob(&mut self, a: usize) {
        self.ob[a] = usize::MAX;
        self.ar[self.b.identities[a]] = usize::MAX;
    }

    fn consistent(&self) -> bool {
        self.b.comp.iter().all(|(&(x, y), &h)| {
            let (fx, fy, fh) = (self.ar[x], self.ar[y], self.ar[h]);
            fx == usize::MAX || fy == usize::MAX || fh == usize::MAX || self.e.compose(fx, fy) == Some(fh)
        })
    }

    fn arrow_step(&mut self, pos: usize) -> Result<()> {
        self.tick()?;
        if pos == self.order.len() {
            return self.object_step(0);
        }
        let f = self.order[pos];
        let (a, b) = self.b.arrows[f];
        let (oa, ob) = (self.ob[a], self.ob[b]);
        let empty = Vec::new();
        let cands: Vec<usize> = match (oa != usize::MAX, ob != usize::MAX) {
            (true, true) => self.homs.get(&(oa, ob)).unwrap_or(&empty).clone(),
            (true, false) => self.by_src[oa].clone(),
            (false, true) => self.by_tgt[ob].clone(),
            (false, false) => (0..self.e.arrows.len()).collect(),
        };
        for g in cands {
            let (s, t) = self.e.arrows[g];
            if a == b && s != t {
                continue;
            }
            let set_a = oa == usize::MAX;
            let set_b = ob == usize::MAX && a != b;
            if set_a {
                self.set_ob(a, s);
            }
            if set_b {
                self.set_ob(b, t);
            }
            self.ar[f] = g;
            if self.consistent() {
                self.arrow_step(pos + 1)?;
            }
            self.ar[f] = usize::MAX;
            if set_a {
                self.unset_ob(a);
            }
            if set_b {
                self.unset_ob(b);
            }
        }
        Ok(())
    }

    /// Objects touched by no non-identity arrow.
    fn object_step(&mut self, a: usize) -> Result<()> {
        if a == self.ob.len() {
            self.out.push((self.ob.clone(), self.ar.clone()));
            return Ok(());
        }
        if self.ob[a] != usize::MAX {
            return self.object_step(a + 1);
        }
        for y in 0..self.e.objects.len() {
            self.tick()?;
            self.set_ob(a, y);
            self.object_step(a + 1)?;
            self.unset_ob(a);
        }
        Ok(())
    }
}

impl CategoryModel for FinCat {
    type Ob = usize;
    type Ar = usize;
    fn objects(&self, _d: usize) -> Vec<usize> {
        (0..self.objects.len()).collect()
    }
    fn arrows(&self, _d: usize) -> Vec<usize> {
        (0..self.arrows.len()).collect()
    }
    fn ob_face(&self, _d: usize, _i: usize, x: &usize) -> usize {
        *x
    }
    fn ob_degeneracy(&self, _d: usize, _j: usize, x: &usize) -> usize {
        *x
    }
    fn ar_face(&self, _d: usize, _i: usize, f: &usize) -> usize {
        *f
    }
    fn ar_degeneracy(&self, _d: usize, _j: usize, f: &usize) -> usize {
        *f
    }
    fn source(&self, _d: usize, f: &usize) -> usize {
        self.arrows[*f].0
    }
    fn target(&self, _d: usize, f: &usize) -> usize {
        self.arrows[*f].1
    }
    fn identity(&self, _d: usize, x: &usize) -> usize {
        self.identities[*x]
    }
    fn compose(&self, _d: usize, f: &usize, g: &usize) -> usize {
        self.comp[&(*f, *g)]
    }
    fn ob_name(&self, x: &usize) -> String {
        self.objects[*x].clone()
    }
    fn ar_name(&self, f: &usize) -> String {
        self.arrow_names[*f].clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_categories_validate() {
        for c in [FinCat::chain(3), FinCat::chaotic(3), FinCat::cyclic_group(3), FinCat::discrete(2)] {
            assert!(c.validate().is_valid());
        }
        assert_eq!(FinCat::chain(2).num_arrows(), 6);
        assert!(FinCat::chaotic(2).is_groupoid());
        assert!(!FinCat::chain(1).is_groupoid());
    }

    #[test]
    fn functor_counts() {
        // functors [1] -> [2] are monotone maps: 6
        let n = FinCat::chain(1).functors(&FinCat::chain(2), 1000).unwrap().len();
        assert_eq!(n, 6);
        // Z/2 -> Z/4: homomorphisms: 2
        let n = FinCat::cyclic_group(2).functors(&FinCat::cyclic_group(4), 1000).unwrap().len();
        assert_eq!(n, 2);
    }

    #[test]
    fn product_of_chains() {
        let p = FinCat::chain(1).product(&FinCat::chain(1));
        assert!(p.validate().is_valid());
        assert_eq!(p.num_arrows(), 9);
    }
}
