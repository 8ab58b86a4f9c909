//! Finite categories, identity-on-objects quotient functors and the
//! category of factorizations.

use std::collections::HashMap;

use crate::report::{ValidationReport, Violation};
use crate::Error;

/// Dense object index.
pub type Obj = usize;
/// Dense morphism index.
pub type Mor = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismInfo {
    pub name: String,
    pub src: Obj,
    pub tgt: Obj,
}

/// A finite category with an explicit composition table.
///
/// `compose(g, f)` is `g ∘ f` and is defined exactly when `tgt(f) = src(g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<MorphismInfo>,
    identity: Vec<Mor>,
    compose: Vec<Option<Mor>>,
}

impl FiniteCategory {
    /// Assembles a category from its tables. Every composable pair must have
    /// an entry and no other pair may; laws are checked separately by
    /// [`validate_category`].
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<MorphismInfo>,
        identity: Vec<Mor>,
        compose: impl IntoIterator<Item = ((Mor, Mor), Mor)>,
    ) -> Result<Self, Error> {
        let n = morphisms.len();
        if identity.len() != objects.len() {
            return Err(Error::Structural("one identity per object required".into()));
        }
        for m in &morphisms {
            if m.src >= objects.len() || m.tgt >= objects.len() {
                return Err(Error::Structural(format!(
                    "morphism {} has a dangling endpoint",
                    m.name
                )));
            }
        }
        if let Some(&bad) = identity.iter().find(|&&i| i >= n) {
            return Err(Error::Structural(format!("identity id {bad} out of range")));
        }
        let mut table = vec![None; n * n];
        for ((g, f), gf) in compose {
            if g >= n || f >= n || gf >= n {
                return Err(Error::Structural(format!(
                    "composition entry ({g},{f}) -> {gf} references an unknown morphism"
                )));
            }
            if morphisms[f].tgt != morphisms[g].src {
                return Err(Error::Structural(format!(
                    "composition entry for non-composable pair ({}, {})",
                    morphisms[g].name, morphisms[f].name
                )));
            }
            table[g * n + f] = Some(gf);
        }
        for g in 0..n {
            for f in 0..n {
                if morphisms[f].tgt == morphisms[g].src && table[g * n + f].is_none() {
                    return Err(Error::Structural(format!(
                        "missing composite {} ∘ {}",
                        morphisms[g].name, morphisms[f].name
                    )));
                }
            }
        }
        let mut names: Vec<&str> = morphisms.iter().map(|m| m.name.as_str()).collect();
        names.sort_unstable();
        if names.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Structural("duplicate morphism name".into()));
        }
        Ok(FiniteCategory {
            objects,
            morphisms,
            identity,
            compose: table,
        })
    }

    /// The one-object category whose morphisms are `names` with composition
    /// `names[op(g, f)] = names[g] ∘ names[f]`. Morphism `0` is the identity.
    pub fn one_object(names: &[&str], op: impl Fn(Mor, Mor) -> Mor) -> Result<Self, Error> {
        let morphisms = names
            .iter()
            .map(|n| MorphismInfo {
                name: n.to_string(),
                src: 0,
                tgt: 0,
            })
            .collect();
        let k = names.len();
        let compose: Vec<_> = (0..k)
            .flat_map(|g| (0..k).map(move |f| (g, f)))
            .map(|(g, f)| ((g, f), op(g, f)))
            .collect();
        FiniteCategory::new(vec!["*".into()], morphisms, vec![0], compose)
    }

    /// Builds a category from named objects and non-identity morphisms.
    /// Identities are added as `id_<object>`; `composites` lists
    /// `(g, f, g∘f)` for non-identity composable pairs by name.
    pub fn from_names(
        objects: &[&str],
        arrows: &[(&str, &str, &str)],
        composites: &[(&str, &str, &str)],
    ) -> Result<Self, Error> {
        let obj = |name: &str| {
            objects
                .iter()
                .position(|o| *o == name)
                .ok_or_else(|| Error::Structural(format!("unknown object {name}")))
        };
        let mut morphisms: Vec<MorphismInfo> = objects
            .iter()
            .enumerate()
            .map(|(i, o)| MorphismInfo {
                name: format!("id_{o}"),
                src: i,
                tgt: i,
            })
            .collect();
        for (name, s, t) in arrows {
            morphisms.push(MorphismInfo {
                name: name.to_string(),
                src: obj(s)?,
                tgt: obj(t)?,
            });
        }
        let mor = |name: &str| {
            morphisms
                .iter()
                .position(|m| m.name == name)
                .ok_or_else(|| Error::Structural(format!("unknown morphism {name}")))
        };
        let identity: Vec<Mor> = (0..objects.len()).collect();
        let mut compose = Vec::new();
        for (g, m) in morphisms.iter().enumerate() {
            compose.push(((identity[m.tgt], g), g));
            compose.push(((g, identity[m.src]), g));
        }
        for (g, f, gf) in composites {
            compose.push(((mor(g)?, mor(f)?), mor(gf)?));
        }
        FiniteCategory::new(
            objects.iter().map(|s| s.to_string()).collect(),
            morphisms,
            identity,
            compose,
        )
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn morphisms(&self) -> std::ops::Range<Mor> {
        0..self.morphisms.len()
    }

    pub fn object_name(&self, o: Obj) -> &str {
        &self.objects[o]
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn name(&self, f: Mor) -> &str {
        &self.morphisms[f].name
    }

    pub fn info(&self, f: Mor) -> &MorphismInfo {
        &self.morphisms[f]
    }

    pub fn src(&self, f: Mor) -> Obj {
        self.morphisms[f].src
    }

    pub fn tgt(&self, f: Mor) -> Obj {
        self.morphisms[f].tgt
    }

    pub fn id(&self, o: Obj) -> Mor {
        self.identity[o]
    }

    pub fn is_identity(&self, f: Mor) -> bool {
        self.identity.contains(&f)
    }

    pub fn object_by_name(&self, name: &str) -> Option<Obj> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_by_name(&self, name: &str) -> Option<Mor> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    /// `g ∘ f` if composable.
    pub fn compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        self.compose[g * self.morphisms.len() + f]
    }

    /// `g ∘ f`; panics when the pair is not composable.
    #[inline]
    pub fn comp(&self, g: Mor, f: Mor) -> Mor {
        self.compose(g, f).unwrap_or_else(|| {
            panic!("{} ∘ {} is not composable", self.name(g), self.name(f))
        })
    }

    pub fn parallel(&self, f: Mor, g: Mor) -> bool {
        self.src(f) == self.src(g) && self.tgt(f) == self.tgt(g)
    }

    /// Morphisms `a → b`.
    pub fn hom(&self, a: Obj, b: Obj) -> Vec<Mor> {
        self.morphisms()
            .filter(|&f| self.src(f) == a && self.tgt(f) == b)
            .collect()
    }

    /// Morphisms starting where `f` ends.
    pub fn after(&self, f: Mor) -> Vec<Mor> {
        self.morphisms()
            .filter(|&g| self.src(g) == self.tgt(f))
            .collect()
    }

    /// Morphisms ending where `f` starts.
    pub fn before(&self, f: Mor) -> Vec<Mor> {
        self.morphisms()
            .filter(|&g| self.tgt(g) == self.src(f))
            .collect()
    }

    /// All composable pairs `(g, f)`, i.e. `tgt(f) = src(g)`.
    pub fn composable_pairs(&self) -> Vec<(Mor, Mor)> {
        let mut out = Vec::new();
        for g in self.morphisms() {
            for f in self.morphisms() {
                if self.tgt(f) == self.src(g) {
                    out.push((g, f));
                }
            }
        }
        out
    }
}

/// Checks typing, unit and associativity laws.
pub fn validate_category(c: &FiniteCategory) -> ValidationReport {
    let mut report = ValidationReport::new();
    for o in 0..c.num_objects() {
        let i = c.id(o);
        if c.src(i) != o || c.tgt(i) != o {
            report.push(Violation::new(
                "identity-typing",
                format!("identity of {} is {}", c.object_name(o), c.name(i)),
            ));
        }
    }
    for (g, f) in c.composable_pairs() {
        let gf = c.comp(g, f);
        if c.src(gf) != c.src(f) || c.tgt(gf) != c.tgt(g) {
            report.push(Violation::new(
                "composition-typing",
                format!("{} ∘ {} = {}", c.name(g), c.name(f), c.name(gf)),
            ));
        }
    }
    for f in c.morphisms() {
        let (s, t) = (c.src(f), c.tgt(f));
        if c.compose(f, c.id(s)) != Some(f) {
            report.push(Violation::new(
                "unit-right",
                format!("{} ∘ id_{} != {}", c.name(f), c.object_name(s), c.name(f)),
            ));
        }
        if c.compose(c.id(t), f) != Some(f) {
            report.push(Violation::new(
                "unit-left",
                format!("id_{} ∘ {} != {}", c.object_name(t), c.name(f), c.name(f)),
            ));
        }
    }
    for (h, g) in c.composable_pairs() {
        for f in c.before(g) {
            let left = c.compose(c.comp(h, g), f);
            let right = c.compose(h, c.comp(g, f));
            if left != right || left.is_none() {
                report.push(Violation::new(
                    "associativity",
                    format!("({},{},{})", c.name(h), c.name(g), c.name(f)),
                ));
            }
        }
    }
    report.finish()
}

/// A functor `π: K → C` that is the identity on objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientFunctor {
    pub src: FiniteCategory,
    pub dst: FiniteCategory,
    map: Vec<Mor>,
}

impl QuotientFunctor {
    /// Object sets must coincide (same names in the same order).
    pub fn new(src: FiniteCategory, dst: FiniteCategory, map: Vec<Mor>) -> Result<Self, Error> {
        if src.object_names() != dst.object_names() {
            return Err(Error::Structural(
                "quotient functor must be the identity on objects".into(),
            ));
        }
        if map.len() != src.num_morphisms() {
            return Err(Error::Structural("morphism map has wrong length".into()));
        }
        if map.iter().any(|&m| m >= dst.num_morphisms()) {
            return Err(Error::Structural("morphism map leaves the target".into()));
        }
        Ok(QuotientFunctor { src, dst, map })
    }

    pub fn identity(c: FiniteCategory) -> Self {
        let map = c.morphisms().collect();
        QuotientFunctor {
            src: c.clone(),
            dst: c,
            map,
        }
    }

    #[inline]
    pub fn apply(&self, f: Mor) -> Mor {
        self.map[f]
    }

    pub fn map(&self) -> &[Mor] {
        &self.map
    }

    /// `π(f) = π(g)`.
    #[inline]
    pub fn same_class(&self, f: Mor, g: Mor) -> bool {
        self.map[f] == self.map[g]
    }

    /// Members of the fibre containing `f`, ascending.
    pub fn class_of(&self, f: Mor) -> Vec<Mor> {
        self.src
            .morphisms()
            .filter(|&g| self.same_class(f, g))
            .collect()
    }

    /// Ordered pairs `(f, g)` with `π(f) = π(g)`, ascending.
    pub fn class_pairs(&self) -> Vec<(Mor, Mor)> {
        let k = &self.src;
        let mut out = Vec::new();
        for f in k.morphisms() {
            for g in k.morphisms() {
                if self.same_class(f, g) {
                    out.push((f, g));
                }
            }
        }
        out
    }

    /// Ordered triples in one fibre, ascending.
    pub fn class_triples(&self) -> Vec<(Mor, Mor, Mor)> {
        let mut out = Vec::new();
        for (f, g) in self.class_pairs() {
            for h in self.class_of(f) {
                out.push((f, g, h));
            }
        }
        out
    }
}

/// Checks functoriality, identity-on-objects typing and surjectivity.
pub fn validate_quotient(q: &QuotientFunctor) -> ValidationReport {
    let (k, c) = (&q.src, &q.dst);
    let mut report = ValidationReport::new();
    for f in k.morphisms() {
        let pf = q.apply(f);
        if c.src(pf) != k.src(f) || c.tgt(pf) != k.tgt(f) {
            report.push(Violation::new(
                "functor-typing",
                format!("π({}) = {} has the wrong endpoints", k.name(f), c.name(pf)),
            ));
        }
    }
    for o in 0..k.num_objects() {
        if q.apply(k.id(o)) != c.id(o) {
            report.push(Violation::new(
                "functor-identity",
                format!("π(id_{})", k.object_name(o)),
            ));
        }
    }
    for (g, f) in k.composable_pairs() {
        let lhs = q.apply(k.comp(g, f));
        if c.compose(q.apply(g), q.apply(f)) != Some(lhs) {
            report.push(Violation::new(
                "functor-composition",
                format!("π({} ∘ {})", k.name(g), k.name(f)),
            ));
        }
    }
    let mut hit = vec![false; c.num_morphisms()];
    for &m in q.map() {
        hit[m] = true;
    }
    for (u, h) in hit.iter().enumerate() {
        if !h {
            report.push(Violation::new(
                "functor-surjective",
                format!("{} has no preimage", c.name(u)),
            ));
        }
    }
    report.finish()
}

/// A morphism `(g, h): f → f'` of the factorization category, where
/// `f' = h ∘ f ∘ g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FactorizationMorphism {
    pub from: Mor,
    pub to: Mor,
    pub pre: Mor,
    pub post: Mor,
}

/// The category of factorizations together with the decoding of its
/// morphisms.
#[derive(Clone, Debug)]
pub struct FactorizationCategory {
    pub category: FiniteCategory,
    pub morphisms: Vec<FactorizationMorphism>,
    index: HashMap<FactorizationMorphism, Mor>,
}

impl FactorizationCategory {
    pub fn lookup(&self, m: &FactorizationMorphism) -> Option<Mor> {
        self.index.get(m).copied()
    }
}

/// Objects are the morphisms of `c`; a morphism `f → f'` is a pair
/// `(g, h)` with `f' = h f g`, composed by `(g',h')(g,h) = (g g', h' h)`.
pub fn factorization_category(c: &FiniteCategory) -> Result<FactorizationCategory, Error> {
    let mut fms = Vec::new();
    for f in c.morphisms() {
        for g in c.morphisms().filter(|&g| c.tgt(g) == c.src(f)) {
            for h in c.morphisms().filter(|&h| c.src(h) == c.tgt(f)) {
                let to = c.comp(h, c.comp(f, g));
                fms.push(FactorizationMorphism {
                    from: f,
                    to,
                    pre: g,
                    post: h,
                });
            }
        }
    }
    let index: HashMap<FactorizationMorphism, Mor> =
        fms.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let objects: Vec<String> = c.morphisms().map(|f| c.name(f).to_string()).collect();
    let infos = fms
        .iter()
        .map(|m| MorphismInfo {
            name: format!(
                "({},{}):{}->{}",
                c.name(m.pre),
                c.name(m.post),
                c.name(m.from),
                c.name(m.to)
            ),
            src: m.from,
            tgt: m.to,
        })
        .collect();
    let identity = c
        .morphisms()
        .map(|f| {
            index[&FactorizationMorphism {
                from: f,
                to: f,
                pre: c.id(c.src(f)),
                post: c.id(c.tgt(f)),
            }]
        })
        .collect();
    let mut compose = Vec::new();
    for (i, first) in fms.iter().enumerate() {
        for (j, second) in fms.iter().enumerate() {
            if second.from != first.to {
                continue;
            }
            let composite = FactorizationMorphism {
                from: first.from,
                to: second.to,
                pre: c.comp(first.pre, second.pre),
                post: c.comp(second.post, first.post),
            };
            let k = *index.get(&composite).ok_or_else(|| {
                Error::Invalid("factorization composite escapes the category".into())
            })?;
            compose.push(((j, i), k));
        }
    }
    let category = FiniteCategory::new(objects, infos, identity, compose)?;
    Ok(FactorizationCategory {
        category,
        morphisms: fms,
        index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn small_categories_validate() {
        let terminal = FiniteCategory::from_names(&["0"], &[], &[]).unwrap();
        assert!(validate_category(&terminal).passed());
        assert!(validate_category(&fixtures::parallel_pair()).passed());
        assert!(validate_category(&fixtures::arrow()).passed());
        assert!(validate_category(&fixtures::chain()).passed());
        assert!(validate_category(&fixtures::cyclic_monoid(4)).passed());
    }

    #[test]
    fn broken_unit_law_is_reported() {
        let p = fixtures::parallel_pair();
        let f = p.morphism_by_name("f").unwrap();
        let g = p.morphism_by_name("g").unwrap();
        let entries: Vec<_> = p
            .composable_pairs()
            .into_iter()
            .map(|(a, b)| {
                let v = if (a, b) == (f, p.id(0)) { g } else { p.comp(a, b) };
                ((a, b), v)
            })
            .collect();
        let broken = FiniteCategory::new(
            p.object_names().to_vec(),
            p.morphisms().map(|m| p.info(m).clone()).collect(),
            vec![p.id(0), p.id(1)],
            entries,
        )
        .unwrap();
        let report = validate_category(&broken);
        assert!(report.has_rule("unit-right"));
    }

    #[test]
    fn dangling_ids_are_structural() {
        let bad = FiniteCategory::new(
            vec!["0".into()],
            vec![MorphismInfo {
                name: "id".into(),
                src: 0,
                tgt: 3,
            }],
            vec![0],
            vec![],
        );
        assert!(matches!(bad, Err(Error::Structural(_))));
    }

    /// Oracle: count `(g, h)` pairs with `f' = h f g` by direct enumeration.
    fn hom_count_oracle(c: &FiniteCategory, f: Mor, f2: Mor) -> usize {
        let mut n = 0;
        for g in c.morphisms() {
            for h in c.morphisms() {
                if c.tgt(g) == c.src(f)
                    && c.src(h) == c.tgt(f)
                    && c.src(g) == c.src(f2)
                    && c.tgt(h) == c.tgt(f2)
                    && c.comp(h, c.comp(f, g)) == f2
                {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn factorization_of_small_categories() {
        let terminal = FiniteCategory::from_names(&["0"], &[], &[]).unwrap();
        let ft = factorization_category(&terminal).unwrap();
        assert_eq!(ft.category.num_objects(), 1);
        assert_eq!(ft.category.num_morphisms(), 1);

        let arrow = fixtures::arrow();
        let fa = factorization_category(&arrow).unwrap();
        assert_eq!(fa.category.num_objects(), 3);
        assert!(validate_category(&fa.category).passed());
        for f in arrow.morphisms() {
            for f2 in arrow.morphisms() {
                let n = fa.category.hom(f, f2).len();
                assert_eq!(n, hom_count_oracle(&arrow, f, f2));
            }
        }
        // u: 0 → 1 receives one factorization from each of id0, id1, u.
        let u = arrow.morphism_by_name("u").unwrap();
        assert_eq!(
            arrow.morphisms().map(|f| hom_count_oracle(&arrow, f, u)).sum::<usize>(),
            3
        );

        let p = fixtures::parallel_pair();
        let fp = factorization_category(&p).unwrap();
        assert_eq!(fp.category.num_objects(), 4);
        assert!(validate_category(&fp.category).passed());
    }

    #[test]
    fn factorization_decomposes_into_pre_and_post() {
        for c in [fixtures::chain(), fixtures::cyclic_monoid(3), fixtures::parallel_pair()] {
            let fc = factorization_category(&c).unwrap();
            assert!(validate_category(&fc.category).passed());
            for (k, m) in fc.morphisms.iter().enumerate() {
                let mid_pre = c.comp(m.from, m.pre);
                let mid_post = c.comp(m.post, m.from);
                let pre = fc
                    .lookup(&FactorizationMorphism { from: m.from, to: mid_pre, pre: m.pre, post: c.id(c.tgt(m.from)) })
                    .unwrap();
                let post_after = fc
                    .lookup(&FactorizationMorphism { from: mid_pre, to: m.to, pre: c.id(c.src(mid_pre)), post: m.post })
                    .unwrap();
                let post = fc
                    .lookup(&FactorizationMorphism { from: m.from, to: mid_post, pre: c.id(c.src(m.from)), post: m.post })
                    .unwrap();
                let pre_after = fc
                    .lookup(&FactorizationMorphism { from: mid_post, to: m.to, pre: m.pre, post: c.id(c.tgt(mid_post)) })
                    .unwrap();
                // (g,h) = (g,id)(id,h) = (id,h)(g,id), as composites in F c.
                assert_eq!(fc.category.comp(post_after, pre), k);
                assert_eq!(fc.category.comp(pre_after, post), k);
            }
        }
    }

    #[test]
    fn quotient_examples() {
        let p = fixtures::parallel_pair();
        assert!(validate_quotient(&QuotientFunctor::identity(p.clone())).passed());
        assert!(validate_quotient(&fixtures::collapse_parallel_pair()).passed());

        let arrow = fixtures::arrow();
        let u = arrow.morphism_by_name("u").unwrap();
        let map = p
            .morphisms()
            .map(|m| match p.name(m) {
                "f" => u,
                "g" => arrow.id(1),
                "id_0" => arrow.id(0),
                _ => arrow.id(1),
            })
            .collect();
        let bad = QuotientFunctor::new(p.clone(), arrow, map).unwrap();
        assert!(validate_quotient(&bad).has_rule("functor-typing"));

        let other = FiniteCategory::from_names(&["a", "b"], &[], &[]).unwrap();
        assert!(QuotientFunctor::new(p, other, vec![0, 1, 0, 0]).is_err());
    }
}
