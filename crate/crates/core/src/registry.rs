//! Spaces, symbols, covers and morphisms that motives refer to.
//!
//! A [`Registry`] is assembled once (programmatically or from a
//! `motivic-registry/v1` JSON document) and then shared read-only.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{MotiveError, Result};
use crate::motive::{MonSymbol, Monomial, Motive};
use crate::text;
use crate::zbundle::{BundleBits, BundleClass, BundleSpace, F2Matrix, SquareRootDatum, MAX_GENERATORS};

pub const REGISTRY_SCHEMA: &str = "motivic-registry/v1";
pub const POINT: &str = "pt";

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpaceId(Arc<str>);

impl SpaceId {
    pub fn point() -> Self {
        SpaceId::from(POINT)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_point(&self) -> bool {
        &*self.0 == POINT
    }
}

impl std::ops::Deref for SpaceId {
    type Target = str;

    fn deref(&self) -> &str {
        &self.0
    }
}

impl From<&str> for SpaceId {
    fn from(s: &str) -> Self {
        SpaceId(Arc::from(s))
    }
}

impl From<String> for SpaceId {
    fn from(s: String) -> Self {
        SpaceId(Arc::from(s))
    }
}

impl fmt::Display for SpaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for SpaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl Serialize for SpaceId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for SpaceId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d).map(SpaceId::from)
    }
}

#[derive(Clone, Debug)]
pub struct SpaceInfo {
    pub id: SpaceId,
    pub dim: Option<u32>,
    pub bundles: BundleSpace,
    pub strata: Vec<SpaceId>,
    /// Class of the space pushed forward to the point, if declared.
    pub total_class: Option<Motive>,
    /// `(left, right)` when this space is a registered product.
    pub factors: Option<(SpaceId, SpaceId)>,
}

#[derive(Clone, Debug)]
pub struct SymbolInfo {
    pub symbol: MonSymbol,
    pub underlying: Option<Motive>,
    /// Set for order-2 symbols declared as principal Z2-bundle covers.
    pub cover: Option<BundleBits>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MorphismKind {
    OpenInclusion,
    Etale,
    ToPoint,
    General,
}

/// A registered morphism `source → target` with its transport tables.
#[derive(Clone, Debug)]
pub struct Morphism {
    pub name: String,
    pub source: SpaceId,
    pub target: SpaceId,
    pub kind: MorphismKind,
    /// Column `j` is the pullback of target generator `j`; `None` when undeclared.
    pub bundle_pullback: Vec<Option<BundleBits>>,
    /// Pullback images of target symbols, keyed by symbol name.
    pub symbol_pullback: BTreeMap<Arc<str>, Motive>,
    /// Pushforward images of source basis elements.
    pub pushforward: BTreeMap<(Monomial, BundleBits), Motive>,
}

impl Morphism {
    /// The F2 pullback matrix, if every column is known.
    pub fn bundle_matrix(&self) -> Option<F2Matrix> {
        self.bundle_pullback
            .iter()
            .copied()
            .collect::<Option<Vec<_>>>()
            .map(|columns| F2Matrix { columns })
    }

    pub fn pull_bits(&self, reg: &Registry, bits: BundleBits) -> Result<BundleBits> {
        let mut out = BundleBits::ZERO;
        for j in bits.ones() {
            let col = self.bundle_pullback.get(j).copied().flatten().ok_or_else(|| {
                let name = reg
                    .space(&self.target)
                    .ok()
                    .and_then(|s| s.bundles.generators.get(j).cloned())
                    .unwrap_or_else(|| format!("#{j}"));
                MotiveError::MissingTransport {
                    morphism: self.name.clone(),
                    item: format!("bundle generator {name}"),
                }
            })?;
            out = out.tensor(col);
        }
        Ok(out)
    }

    pub fn pull_class(&self, reg: &Registry, class: &BundleClass) -> Result<BundleClass> {
        if class.space != self.target {
            return Err(MotiveError::SpaceMismatch {
                left: class.space.to_string(),
                right: self.target.to_string(),
            });
        }
        Ok(BundleClass::new(self.source.clone(), self.pull_bits(reg, class.bits)?))
    }
}

#[derive(Clone, Debug)]
pub struct Registry {
    spaces: BTreeMap<SpaceId, SpaceInfo>,
    symbols: BTreeMap<(SpaceId, Arc<str>), SymbolInfo>,
    morphisms: BTreeMap<String, Morphism>,
    products: BTreeMap<(SpaceId, SpaceId), SpaceId>,
    square_roots: Vec<SquareRootDatum>,
}

impl Default for Registry {
    fn default() -> Self {
        Self::new()
    }
}

fn builtin_order(name: &str) -> Option<u32> {
    name.strip_prefix("mu_")?.parse().ok().filter(|n| *n >= 1)
}

impl Registry {
    /// An empty registry containing only the point `pt`.
    pub fn new() -> Self {
        let mut spaces = BTreeMap::new();
        let pt = SpaceId::point();
        spaces.insert(
            pt.clone(),
            SpaceInfo {
                id: pt.clone(),
                dim: Some(0),
                bundles: BundleSpace {
                    space: pt,
                    generators: vec![],
                },
                strata: vec![],
                total_class: None,
                factors: None,
            },
        );
        Self {
            spaces,
            symbols: BTreeMap::new(),
            morphisms: BTreeMap::new(),
            products: BTreeMap::new(),
            square_roots: vec![],
        }
    }

    pub fn add_space(&mut self, name: &str, dim: Option<u32>, generators: &[&str]) -> Result<SpaceId> {
        self.add_space_owned(name, dim, generators.iter().map(|g| g.to_string()).collect())
    }

    fn add_space_owned(&mut self, name: &str, dim: Option<u32>, generators: Vec<String>) -> Result<SpaceId> {
        let id = SpaceId::from(name);
        if self.spaces.contains_key(&id) {
            return Err(MotiveError::Duplicate {
                kind: "space",
                name: name.to_string(),
            });
        }
        if generators.len() > MAX_GENERATORS {
            return Err(MotiveError::TooManyGenerators {
                space: name.to_string(),
                count: generators.len(),
            });
        }
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(MotiveError::Duplicate {
                    kind: "bundle generator",
                    name: format!("{name}.{g}"),
                });
            }
        }
        self.spaces.insert(
            id.clone(),
            SpaceInfo {
                id: id.clone(),
                dim,
                bundles: BundleSpace {
                    space: id.clone(),
                    generators,
                },
                strata: vec![],
                total_class: None,
                factors: None,
            },
        );
        Ok(id)
    }

    pub fn add_stratum(&mut self, space: &str, stratum: &str) -> Result<()> {
        let stratum = self.space(stratum)?.id.clone();
        self.space_mut(space)?.strata.push(stratum);
        Ok(())
    }

    pub fn set_total_class(&mut self, space: &str, class: Motive) -> Result<()> {
        if !class.space().is_point() {
            return Err(MotiveError::SpaceMismatch {
                left: class.space().to_string(),
                right: POINT.into(),
            });
        }
        self.space_mut(space)?.total_class = Some(class);
        Ok(())
    }

    /// Declares an opaque monodromic symbol.
    pub fn add_symbol(&mut self, space: &str, name: &str, order: u32, underlying: Option<Motive>) -> Result<()> {
        if order == 0 {
            return Err(MotiveError::InvalidDeclaration(format!("symbol {name} has order 0")));
        }
        self.insert_symbol(space, name, order, underlying, None)
    }

    /// Declares an order-2 symbol `[P, ρ̂]` for the Z2-bundle with the given class.
    pub fn add_cover(&mut self, space: &str, name: &str, class: &[&str], underlying: Option<Motive>) -> Result<()> {
        let bits = self.bundle_space(space)?.class_of(class)?.bits;
        self.insert_symbol(space, name, 2, underlying, Some(bits))
    }

    fn insert_symbol(
        &mut self,
        space: &str,
        name: &str,
        order: u32,
        underlying: Option<Motive>,
        cover: Option<BundleBits>,
    ) -> Result<()> {
        let id = self.space(space)?.id.clone();
        if builtin_order(name).is_some() {
            return Err(MotiveError::InvalidDeclaration(format!(
                "`{name}` is a reserved builtin symbol"
            )));
        }
        if !crate::text::is_valid_name(name) {
            return Err(MotiveError::InvalidDeclaration(format!("bad symbol name `{name}`")));
        }
        if let Some(u) = &underlying {
            if !u.is_trivial_monodromy() {
                return Err(MotiveError::InvalidDeclaration(format!(
                    "underlying class of {name} must have trivial monodromy"
                )));
            }
        }
        let key = (id.clone(), Arc::from(name));
        if self.symbols.contains_key(&key) {
            return Err(MotiveError::Duplicate {
                kind: "symbol",
                name: format!("{space}.{name}"),
            });
        }
        let symbol = MonSymbol {
            name: key.1.clone(),
            space: id,
            order,
        };
        self.symbols.insert(
            key,
            SymbolInfo {
                symbol,
                underlying,
                cover,
            },
        );
        Ok(())
    }

    /// Registers `name = left × right`; its generators are those of `left` then `right`.
    pub fn add_product(&mut self, name: &str, left: &str, right: &str) -> Result<SpaceId> {
        let l = self.space(left)?.clone();
        let r = self.space(right)?.clone();
        let clash = |g: &String, other: &[String]| other.contains(g);
        let lg = &l.bundles.generators;
        let rg = &r.bundles.generators;
        let mut gens: Vec<String> = lg
            .iter()
            .map(|g| if clash(g, rg) { format!("{left}.{g}") } else { g.clone() })
            .collect();
        gens.extend(rg.iter().map(|g| {
            if clash(g, lg) {
                format!("{right}.{g}")
            } else {
                g.clone()
            }
        }));
        let dim = match (l.dim, r.dim) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        let id = self.add_space_owned(name, dim, gens)?;
        self.space_mut(name)?.factors = Some((l.id.clone(), r.id.clone()));
        self.products.insert((l.id, r.id), id.clone());
        Ok(id)
    }

    pub fn add_morphism(&mut self, m: Morphism) -> Result<()> {
        self.space(&m.source)?;
        self.space(&m.target)?;
        if self.morphisms.contains_key(&m.name) {
            return Err(MotiveError::Duplicate {
                kind: "morphism",
                name: m.name.clone(),
            });
        }
        for img in m.symbol_pullback.values() {
            expect_space(img, &m.source)?;
        }
        for img in m.pushforward.values() {
            expect_space(img, &m.target)?;
        }
        self.morphisms.insert(m.name.clone(), m);
        Ok(())
    }

    /// Starts a morphism declaration with default (empty) tables.
    pub fn morphism_builder(
        &self,
        name: &str,
        source: &str,
        target: &str,
        kind: MorphismKind,
    ) -> Result<MorphismBuilder<'_>> {
        let s = self.space(source)?.id.clone();
        let t = self.space(target)?;
        let columns = t.bundles.generators.len();
        let mut bundle_pullback = vec![None; columns];
        if kind == MorphismKind::OpenInclusion {
            let src = &self.space(&s)?.bundles;
            for (j, g) in t.bundles.generators.iter().enumerate() {
                if let Some(i) = src.generators.iter().position(|h| h == g) {
                    bundle_pullback[j] = Some(BundleBits::basis(i));
                }
            }
        }
        Ok(MorphismBuilder {
            reg: self,
            m: Morphism {
                name: name.to_string(),
                source: s,
                target: t.id.clone(),
                kind,
                bundle_pullback,
                symbol_pullback: BTreeMap::new(),
                pushforward: BTreeMap::new(),
            },
        })
    }

    pub fn add_square_root(&mut self, datum: SquareRootDatum) -> Result<()> {
        self.bundle_space(&datum.space)?.class_of(&datum.class)?;
        self.square_roots.push(datum);
        Ok(())
    }

    pub fn space(&self, name: &str) -> Result<&SpaceInfo> {
        self.spaces
            .get(&SpaceId::from(name))
            .ok_or_else(|| MotiveError::unknown("space", name))
    }

    fn space_mut(&mut self, name: &str) -> Result<&mut SpaceInfo> {
        self.spaces
            .get_mut(&SpaceId::from(name))
            .ok_or_else(|| MotiveError::unknown("space", name))
    }

    pub fn spaces(&self) -> impl Iterator<Item = &SpaceInfo> {
        self.spaces.values()
    }

    pub fn space_id(&self, name: &str) -> Result<SpaceId> {
        Ok(self.space(name)?.id.clone())
    }

    pub fn bundle_space(&self, name: &str) -> Result<&BundleSpace> {
        Ok(&self.space(name)?.bundles)
    }

    pub fn class(&self, space: &str, gens: &[&str]) -> Result<BundleClass> {
        self.bundle_space(space)?.class_of(gens)
    }

    pub fn morphism(&self, name: &str) -> Result<&Morphism> {
        self.morphisms
            .get(name)
            .ok_or_else(|| MotiveError::unknown("morphism", name))
    }

    pub fn morphisms(&self) -> impl Iterator<Item = &Morphism> {
        self.morphisms.values()
    }

    pub fn square_roots(&self) -> &[SquareRootDatum] {
        &self.square_roots
    }

    pub fn product(&self, left: &SpaceId, right: &SpaceId) -> Result<&SpaceInfo> {
        let id = self
            .products
            .get(&(left.clone(), right.clone()))
            .ok_or_else(|| MotiveError::UnregisteredProduct {
                left: left.to_string(),
                right: right.to_string(),
            })?;
        self.space(id.as_str())
    }

    /// Resolves a symbol name on `space`, including the builtin `mu_n` covers.
    /// Returns `None` for builtins, which have no registry entry.
    pub fn symbol(&self, space: &SpaceId, name: &str) -> Result<Option<&SymbolInfo>> {
        if builtin_order(name).is_some() {
            return Ok(None);
        }
        self.symbols
            .get(&(space.clone(), Arc::from(name)))
            .map(Some)
            .ok_or_else(|| MotiveError::unknown("symbol", format!("{space}.{name}")))
    }

    pub fn symbol_info(&self, sym: &MonSymbol) -> Option<&SymbolInfo> {
        self.symbols.get(&(sym.space.clone(), sym.name.clone()))
    }

    pub fn symbols(&self) -> impl Iterator<Item = &SymbolInfo> {
        self.symbols.values()
    }

    /// A declared cover on `space` whose class is `bits`, if any.
    pub fn cover_with_class(&self, space: &SpaceId, bits: BundleBits) -> Option<&SymbolInfo> {
        self.symbols
            .range((space.clone(), Arc::from(""))..)
            .take_while(|((s, _), _)| s == space)
            .map(|(_, info)| info)
            .find(|info| info.cover == Some(bits))
    }

    /// The motive of a named symbol on `space`:
    /// builtin `mu_n` is `X × μ_n` (with `mu_1 = 1`, `mu_2 = 1 - L^(1/2)`),
    /// declared covers are rewritten to `1 - L^(1/2) ⊙ Y(p)`, other symbols stay opaque.
    pub fn symbol_motive(&self, space: &SpaceId, name: &str) -> Result<Motive> {
        self.space(space.as_str())?;
        if let Some(n) = builtin_order(name) {
            return Ok(match n {
                1 => Motive::one(space.clone()),
                2 => Motive::cover(space.clone(), BundleBits::ZERO),
                n => Motive::symbol(MonSymbol::builtin(space.clone(), n)),
            });
        }
        let info = self.symbol(space, name)?.expect("non-builtin");
        Ok(match info.cover {
            Some(bits) => Motive::cover(space.clone(), bits),
            None => Motive::symbol(info.symbol.clone()),
        })
    }

    /// Spaces whose symbols may appear in motives over `space`: itself, the point,
    /// declared strata and product factors, transitively.
    pub fn related_spaces(&self, space: &SpaceId) -> Vec<SpaceId> {
        let mut out = vec![SpaceId::point(), space.clone()];
        let mut i = 1;
        while i < out.len() {
            if let Some(info) = self.spaces.get(&out[i]) {
                let mut next: Vec<SpaceId> = info.strata.clone();
                if let Some((l, r)) = &info.factors {
                    next.push(l.clone());
                    next.push(r.clone());
                }
                for n in next {
                    if !out.contains(&n) {
                        out.push(n);
                    }
                }
            }
            i += 1;
        }
        out
    }

    /// Checks that every symbol and bundle coordinate of `m` makes sense over its space.
    pub fn validate_motive(&self, m: &Motive) -> Result<()> {
        let info = self.space(m.space().as_str())?;
        let related = self.related_spaces(m.space());
        let gens = info.bundles.generators.len();
        for ((mono, bits), _) in m.terms() {
            if bits.ones().any(|i| i >= gens) {
                return Err(MotiveError::InvalidDeclaration(format!(
                    "bundle coordinates out of range for space {}",
                    m.space()
                )));
            }
            for (sym, _) in mono.factors() {
                if !related.contains(&sym.space) {
                    return Err(MotiveError::InvalidDeclaration(format!(
                        "symbol {} lives on {}, unrelated to {}",
                        sym.name,
                        sym.space,
                        m.space()
                    )));
                }
            }
        }
        Ok(())
    }

    /// Composite `outer ∘ inner` (apply `inner` first) with composed tables.
    pub fn compose(&self, inner: &Morphism, outer: &Morphism) -> Result<Morphism> {
        if inner.target != outer.source {
            return Err(MotiveError::SpaceMismatch {
                left: inner.target.to_string(),
                right: outer.source.to_string(),
            });
        }
        let kind = match (inner.kind, outer.kind) {
            (MorphismKind::OpenInclusion, MorphismKind::OpenInclusion) => MorphismKind::OpenInclusion,
            (MorphismKind::Etale | MorphismKind::OpenInclusion, MorphismKind::Etale | MorphismKind::OpenInclusion) => {
                MorphismKind::Etale
            }
            (_, MorphismKind::ToPoint) => MorphismKind::ToPoint,
            _ => MorphismKind::General,
        };
        let bundle_pullback = outer
            .bundle_pullback
            .iter()
            .map(|col| col.and_then(|c| inner.pull_bits(self, c).ok()))
            .collect();
        let mut symbol_pullback = BTreeMap::new();
        for (name, img) in &outer.symbol_pullback {
            symbol_pullback.insert(name.clone(), crate::motive::pullback(self, inner, img)?);
        }
        let mut pushforward = BTreeMap::new();
        for (key, img) in &inner.pushforward {
            if let Ok(v) = crate::motive::pushforward(self, outer, img) {
                pushforward.insert(key.clone(), v);
            }
        }
        Ok(Morphism {
            name: format!("{}∘{}", outer.name, inner.name),
            source: inner.source.clone(),
            target: outer.target.clone(),
            kind,
            bundle_pullback,
            symbol_pullback,
            pushforward,
        })
    }

    /// Builds a registry from its JSON document form.
    pub fn from_file(file: &RegistryFile) -> Result<Self> {
        if let Some(s) = &file.schema {
            if s != REGISTRY_SCHEMA {
                return Err(MotiveError::InvalidDeclaration(format!(
                    "unsupported registry schema `{s}`"
                )));
            }
        }
        let mut reg = Registry::new();
        for s in &file.spaces {
            reg.add_space_owned(&s.name, s.dim, s.generators.clone())?;
        }
        for s in &file.spaces {
            for st in &s.strata {
                reg.add_stratum(&s.name, st)?;
            }
        }
        for p in &file.products {
            reg.add_product(&p.name, &p.left, &p.right)?;
        }
        // Symbols first without underlying classes, since those may mention other symbols.
        for s in &file.symbols {
            reg.add_symbol(&s.space, &s.name, s.order, None)?;
        }
        for c in &file.covers {
            let class: Vec<&str> = c.class.iter().map(String::as_str).collect();
            reg.add_cover(&c.space, &c.name, &class, None)?;
        }
        let mut underlying = vec![];
        for (space, name, u) in file
            .symbols
            .iter()
            .map(|s| (&s.space, &s.name, &s.underlying))
            .chain(file.covers.iter().map(|c| (&c.space, &c.name, &c.underlying)))
        {
            if let Some(u) = u {
                underlying.push((space.clone(), name.clone(), u.resolve(&reg, space)?));
            }
        }
        for (space, name, u) in underlying {
            if !u.is_trivial_monodromy() {
                return Err(MotiveError::InvalidDeclaration(format!(
                    "underlying class of {name} must have trivial monodromy"
                )));
            }
            let key = (SpaceId::from(space.as_str()), Arc::from(name.as_str()));
            if let Some(info) = reg.symbols.get_mut(&key) {
                info.underlying = Some(u);
            }
        }
        for s in &file.spaces {
            if let Some(tc) = &s.total_class {
                let m = tc.resolve(&reg, POINT)?;
                reg.set_total_class(&s.name, m)?;
            }
        }
        for m in &file.morphisms {
            let mut b = reg.morphism_builder(&m.name, &m.source, &m.target, m.kind)?;
            for (gen, img) in &m.bundle_pullback {
                let img: Vec<&str> = img.iter().map(String::as_str).collect();
                b = b.bundle(gen, &img)?;
            }
            for (sym, img) in &m.symbol_pullback {
                let img = img.resolve(b.reg, &m.source)?;
                b = b.symbol(sym, img)?;
            }
            for e in &m.pushforward {
                let src = e.source.resolve(b.reg, &m.source)?;
                let img = e.image.resolve(b.reg, &m.target)?;
                b = b.push(&src, img)?;
            }
            let built = b.build();
            reg.add_morphism(built)?;
        }
        for d in &file.square_roots {
            reg.add_square_root(d.clone())?;
        }
        Ok(reg)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: RegistryFile =
            serde_json::from_str(text).map_err(|e| MotiveError::InvalidDeclaration(e.to_string()))?;
        Self::from_file(&file)
    }
}

fn expect_space(m: &Motive, space: &SpaceId) -> Result<()> {
    if m.space() != space {
        return Err(MotiveError::SpaceMismatch {
            left: m.space().to_string(),
            right: space.to_string(),
        });
    }
    Ok(())
}

pub struct MorphismBuilder<'r> {
    reg: &'r Registry,
    m: Morphism,
}

impl<'r> MorphismBuilder<'r> {
    /// Declares the pullback of target generator `gen` as a sum of source generators.
    pub fn bundle(mut self, gen: &str, image: &[&str]) -> Result<Self> {
        let target = self.reg.bundle_space(self.m.target.as_str())?;
        let j = target
            .generators
            .iter()
            .position(|g| g == gen)
            .ok_or_else(|| MotiveError::unknown("bundle generator", format!("{}.{gen}", self.m.target)))?;
        let bits = self.reg.bundle_space(self.m.source.as_str())?.class_of(image)?.bits;
        self.m.bundle_pullback[j] = Some(bits);
        Ok(self)
    }

    pub fn symbol(mut self, name: &str, image: Motive) -> Result<Self> {
        expect_space(&image, &self.m.source)?;
        self.reg.symbol(&self.m.target, name)?;
        self.m.symbol_pullback.insert(Arc::from(name), image);
        Ok(self)
    }

    /// Declares the pushforward of a single basis element (coefficient 1).
    pub fn push(mut self, source: &Motive, image: Motive) -> Result<Self> {
        expect_space(source, &self.m.source)?;
        expect_space(&image, &self.m.target)?;
        let mut terms = source.terms();
        let key = match (terms.next(), terms.next()) {
            (Some((key, c)), None) if c.is_one() => key.clone(),
            _ => {
                return Err(MotiveError::InvalidDeclaration(format!(
                    "pushforward source for {} must be a single basis element",
                    self.m.name
                )))
            }
        };
        self.m.pushforward.insert(key, image);
        Ok(self)
    }

    pub fn build(self) -> Morphism {
        self.m
    }
}

/// A motive given either as canonical text or as structured terms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MotiveSpec {
    Text(String),
    Terms(crate::json::MotiveJson),
}

impl MotiveSpec {
    pub fn resolve(&self, reg: &Registry, space: &str) -> Result<Motive> {
        match self {
            MotiveSpec::Text(t) => text::parse_motive(reg, &reg.space_id(space)?, t),
            MotiveSpec::Terms(j) => {
                if j.space != space {
                    return Err(MotiveError::SpaceMismatch {
                        left: j.space.clone(),
                        right: space.to_string(),
                    });
                }
                j.to_motive(reg)
            }
        }
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegistryFile {
    #[serde(default)]
    pub schema: Option<String>,
    #[serde(default)]
    pub spaces: Vec<SpaceDecl>,
    #[serde(default)]
    pub symbols: Vec<SymbolDecl>,
    #[serde(default)]
    pub covers: Vec<CoverDecl>,
    #[serde(default)]
    pub products: Vec<ProductDecl>,
    #[serde(default)]
    pub morphisms: Vec<MorphismDecl>,
    #[serde(default)]
    pub square_roots: Vec<SquareRootDatum>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDecl {
    pub name: String,
    #[serde(default)]
    pub dim: Option<u32>,
    #[serde(default)]
    pub generators: Vec<String>,
    #[serde(default)]
    pub strata: Vec<String>,
    #[serde(default)]
    pub total_class: Option<MotiveSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolDecl {
    pub name: String,
    pub space: String,
    pub order: u32,
    #[serde(default)]
    pub underlying: Option<MotiveSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverDecl {
    pub name: String,
    pub space: String,
    pub class: Vec<String>,
    #[serde(default)]
    pub underlying: Option<MotiveSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductDecl {
    pub name: String,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDecl {
    pub name: String,
    pub source: String,
    pub target: String,
    pub kind: MorphismKind,
    #[serde(default)]
    pub bundle_pullback: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub symbol_pullback: BTreeMap<String, MotiveSpec>,
    #[serde(default)]
    pub pushforward: Vec<PushforwardDecl>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PushforwardDecl {
    pub source: MotiveSpec,
    pub image: MotiveSpec,
}
