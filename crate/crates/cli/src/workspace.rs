//! Workspace files: named permutation groups, homomorphisms and fiber products.
//!
//! ```text
//! group C4
//! gen a = (1 2 3 4)
//!
//! hom eta1 : C4 -> C2
//! a -> t
//!
//! fprod F = eta1, eta1
//! ```
//!
//! A blank line ends a `group` or `hom` block and `#` starts a comment.
//! Homs may refer to groups declared anywhere in the workspace; a fiber
//! product may refer to any hom and to fiber products declared before it.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use fundament_core::fprod::{fiber_product_capped, FiberProduct};
use fundament_core::{build_group, named, Cover, FiniteGroup, GroupHom, DEFAULT_ORDER_CAP};

use crate::error::{CliError, Context, Location, Result};
use crate::expr::parse_cover_list;
use crate::lex::Cursor;

#[derive(Clone, Debug)]
pub enum Object {
    Group(Arc<FiniteGroup>),
    Hom(GroupHom),
    FiberProduct(Arc<FiberProduct>),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Group(_) => "group",
            Object::Hom(_) => "hom",
            Object::FiberProduct(_) => "fprod",
        }
    }
}

#[derive(Debug)]
pub struct Workspace {
    objects: Vec<(String, Object)>,
    cap: usize,
    builtins: RefCell<BTreeMap<String, Arc<FiniteGroup>>>,
}

struct GenDecl {
    label: String,
    cycles: Vec<Vec<u32>>,
}

struct GroupDecl {
    name: String,
    at: Location,
    gens: Vec<GenDecl>,
}

struct ImageDecl {
    label: String,
    at: Location,
    word: Vec<(String, i64, Location)>,
}

struct HomDecl {
    name: String,
    at: Location,
    source: (String, Location),
    target: (String, Location),
    images: Vec<ImageDecl>,
}

struct FprodDecl {
    name: String,
    at: Location,
    text: String,
    text_at: Location,
}

enum Block {
    None,
    Group(GroupDecl),
    Hom(HomDecl),
}

#[derive(Default)]
struct Declarations {
    groups: Vec<GroupDecl>,
    homs: Vec<HomDecl>,
    fprods: Vec<FprodDecl>,
    names: BTreeMap<String, Location>,
}

impl Declarations {
    fn claim(&mut self, name: &str, at: &Location) -> Result<()> {
        if let Some(first) = self.names.get(name) {
            return Err(CliError::parse(at.clone(), format!("`{name}` is already declared at {first}")));
        }
        self.names.insert(name.to_string(), at.clone());
        Ok(())
    }

    fn close(&mut self, block: Block) {
        match block {
            Block::None => {}
            Block::Group(g) => self.groups.push(g),
            Block::Hom(h) => self.homs.push(h),
        }
    }

    fn read(&mut self, source: &str, text: &str) -> Result<()> {
        let mut block = Block::None;
        for (index, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            if line.trim().is_empty() {
                self.close(std::mem::replace(&mut block, Block::None));
                continue;
            }
            let mut c = Cursor::new(line, source, index + 1, 1);
            c.skip_ws();
            let first = c.location();
            match c.ident() {
                Some((kw, at)) if kw == "group" => {
                    self.close(std::mem::replace(&mut block, Block::None));
                    let (name, name_at) = c.expect_ident("a group name")?;
                    c.expect_end()?;
                    self.claim(&name, &name_at)?;
                    block = Block::Group(GroupDecl { name, at, gens: Vec::new() });
                }
                Some((kw, at)) if kw == "hom" => {
                    self.close(std::mem::replace(&mut block, Block::None));
                    let (name, name_at) = c.expect_ident("a hom name")?;
                    c.expect(":")?;
                    let src = c.expect_ident("a source group")?;
                    c.expect("->")?;
                    let dst = c.expect_ident("a target group")?;
                    c.expect_end()?;
                    self.claim(&name, &name_at)?;
                    block = Block::Hom(HomDecl { name, at, source: src, target: dst, images: Vec::new() });
                }
                Some((kw, at)) if kw == "fprod" => {
                    self.close(std::mem::replace(&mut block, Block::None));
                    let (name, name_at) = c.expect_ident("a fiber product name")?;
                    c.expect("=")?;
                    c.skip_ws();
                    let text_at = c.location();
                    let text = c.rest().to_string();
                    self.claim(&name, &name_at)?;
                    self.fprods.push(FprodDecl { name, at, text, text_at });
                }
                Some((kw, at)) if kw == "gen" && matches!(block, Block::Group(_)) => {
                    let (label, _) = c.expect_ident("a generator label")?;
                    c.expect("=")?;
                    let cycles = read_cycles(&mut c)?;
                    let Block::Group(g) = &mut block else { unreachable!() };
                    if g.gens.iter().any(|x| x.label == label) {
                        return Err(CliError::parse(at, format!("generator `{label}` is declared twice")));
                    }
                    g.gens.push(GenDecl { label, cycles });
                }
                Some((label, at)) if matches!(block, Block::Hom(_)) => {
                    c.expect("->")?;
                    let word = read_word(&mut c)?;
                    let Block::Hom(h) = &mut block else { unreachable!() };
                    if h.images.iter().any(|x| x.label == label) {
                        return Err(CliError::parse(at, format!("image of `{label}` is given twice")));
                    }
                    h.images.push(ImageDecl { label, at, word });
                }
                _ => {
                    let what = match block {
                        Block::Group(_) => "expected `gen <label> = <cycles>`",
                        Block::Hom(_) => "expected `<generator> -> <word>`",
                        Block::None => "expected `group`, `hom` or `fprod`",
                    };
                    return Err(CliError::parse(first, what));
                }
            }
        }
        self.close(block);
        Ok(())
    }
}

/// `(a b c)(d e)...` with 1-based points; `()` is the identity.
fn read_cycles(c: &mut Cursor) -> Result<Vec<Vec<u32>>> {
    let mut cycles = Vec::new();
    let mut seen = Vec::new();
    while !c.at_end() {
        c.expect("(")?;
        let mut cycle = Vec::new();
        while !c.eat(")") {
            if c.at_end() {
                return Err(c.error("unclosed cycle"));
            }
            let (n, at) = c.integer()?;
            let point = u32::try_from(n)
                .ok()
                .filter(|&p| p >= 1)
                .ok_or_else(|| CliError::parse(at.clone(), "points are positive integers"))?;
            if seen.contains(&point) {
                return Err(CliError::parse(at, format!("point {point} occurs twice")));
            }
            seen.push(point);
            cycle.push(point);
            c.eat(",");
        }
        cycles.push(cycle);
    }
    Ok(cycles)
}

/// Space- or `*`-separated factors `label` or `label^k`; `1` alone is the identity.
fn read_word(c: &mut Cursor) -> Result<Vec<(String, i64, Location)>> {
    let mut word = Vec::new();
    while !c.at_end() {
        let (label, at) = c.expect_ident("a generator label")?;
        let exp = if c.eat("^") { c.integer()?.0 } else { 1 };
        word.push((label, exp, at));
        c.eat("*");
    }
    Ok(word)
}

fn degree(gens: &[GenDecl]) -> usize {
    gens.iter().flat_map(|g| g.cycles.iter().flatten()).copied().max().unwrap_or(0) as usize
}

fn permutation(degree: usize, cycles: &[Vec<u32>]) -> Vec<u32> {
    let mut p: Vec<u32> = (0..degree as u32).collect();
    for cycle in cycles {
        for (k, &x) in cycle.iter().enumerate() {
            p[x as usize - 1] = cycle[(k + 1) % cycle.len()] - 1;
        }
    }
    p
}

/// Standard groups available by name in command arguments:
/// `1`, `C<n>`, `S<n>`, `A<n>`, `D<m>` (order `2m`), `Q8`, `V4`, and
/// direct products written `GxH`.
fn builtin(name: &str, cap: usize) -> Option<Result<FiniteGroup>> {
    let limit = cap.min(DEFAULT_ORDER_CAP);
    let too_big = |order: usize| {
        (order > limit).then(|| CliError::OrderCapExceeded { context: format!("group {name}"), cap: limit })
    };
    let factorial = |n: usize| (1..=n).try_fold(1usize, |acc, k| acc.checked_mul(k)).unwrap_or(usize::MAX);
    let number = |prefix: char| name.strip_prefix(prefix).and_then(|n| n.parse::<usize>().ok()).filter(|&n| n >= 1);
    let build = |order: usize, make: &dyn Fn() -> FiniteGroup| Some(too_big(order).map_or_else(|| Ok(make()), Err));
    if name == "1" {
        return Some(Ok(FiniteGroup::trivial()));
    }
    if name == "Q8" {
        return Some(Ok(named::quaternion()));
    }
    if name == "V4" {
        return Some(Ok(named::elementary_abelian(2, 2)));
    }
    if let Some(n) = number('C') {
        return build(n, &|| FiniteGroup::cyclic(n));
    }
    if let Some(n) = number('S') {
        return build(factorial(n), &|| named::symmetric(n));
    }
    if let Some(n) = number('A') {
        return build(factorial(n) / 2, &|| named::alternating(n));
    }
    if let Some(m) = number('D').filter(|&m| m >= 2) {
        return build(2 * m, &|| named::dihedral(m));
    }
    let parts: Vec<&str> = name.split('x').collect();
    if parts.len() < 2 {
        return None;
    }
    let mut product = FiniteGroup::trivial();
    for part in parts {
        let factor = match builtin(part, cap)? {
            Ok(g) => g,
            Err(e) => return Some(Err(e)),
        };
        if let Some(e) = too_big(product.order().saturating_mul(factor.order())) {
            return Some(Err(e));
        }
        product = named::direct_product(&product, &factor);
    }
    Some(Ok(product))
}

impl Workspace {
    pub fn empty(cap: usize) -> Self {
        Workspace { objects: Vec::new(), cap, builtins: RefCell::new(BTreeMap::new()) }
    }

    pub fn parse_files(paths: &[impl AsRef<Path>], cap: usize) -> Result<Self> {
        let mut sources = Vec::new();
        for path in paths {
            let path = path.as_ref();
            let text = std::fs::read_to_string(path)
                .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
            sources.push((path.display().to_string(), text));
        }
        Self::parse_sources(&sources, cap)
    }

    /// Parses `(source name, text)` pairs as one workspace.
    pub fn parse_sources(sources: &[(String, String)], cap: usize) -> Result<Self> {
        let mut decls = Declarations::default();
        for (name, text) in sources {
            decls.read(name, text)?;
        }
        let mut ws = Workspace::empty(cap);
        for g in &decls.groups {
            let group = ws.build_declared_group(g)?;
            ws.objects.push((g.name.clone(), Object::Group(Arc::new(group))));
        }
        for h in &decls.homs {
            let hom = ws.build_declared_hom(h)?;
            ws.objects.push((h.name.clone(), Object::Hom(hom)));
        }
        for f in &decls.fprods {
            let covers =
                parse_cover_list(&f.text, &f.text_at)?.iter().map(|e| ws.eval_cover(e)).collect::<Result<Vec<_>>>()?;
            let base = covers[0].target().clone();
            let fp = fiber_product_capped(&base, &covers, cap).context(|| format!("{}: fprod {}", f.at, f.name))?;
            ws.objects.push((f.name.clone(), Object::FiberProduct(Arc::new(fp))));
        }
        Ok(ws)
    }

    fn build_declared_group(&self, g: &GroupDecl) -> Result<FiniteGroup> {
        let n = degree(&g.gens);
        let perms: Vec<Vec<u32>> = g.gens.iter().map(|x| permutation(n, &x.cycles)).collect();
        let labels: Vec<String> = g.gens.iter().map(|x| x.label.clone()).collect();
        build_group(&perms, &labels, self.cap).context(|| format!("{}: group {}", g.at, g.name))
    }

    fn declared_group(&self, name: &str, at: &Location) -> Result<Arc<FiniteGroup>> {
        match self.get(name) {
            Some(Object::Group(g)) => Ok(g.clone()),
            _ => Err(CliError::UnknownReference { at: at.clone(), name: name.to_string() }),
        }
    }

    fn build_declared_hom(&self, h: &HomDecl) -> Result<GroupHom> {
        let source = self.declared_group(&h.source.0, &h.source.1)?;
        let target = self.declared_group(&h.target.0, &h.target.1)?;
        let unknown = |name: &str, at: &Location| CliError::UnknownReference { at: at.clone(), name: name.to_string() };
        let mut images = vec![None; source.generators().len()];
        for img in &h.images {
            let k = source
                .generator_labels()
                .iter()
                .position(|l| *l == img.label)
                .ok_or_else(|| unknown(&img.label, &img.at))?;
            let mut value = target.identity();
            for (label, exp, at) in &img.word {
                if label == "1" && !target.generator_labels().iter().any(|l| l == "1") {
                    continue;
                }
                let j = target.generator_labels().iter().position(|l| l == label).ok_or_else(|| unknown(label, at))?;
                let x = target.generators()[j];
                let x = if *exp < 0 { target.inv(x) } else { x };
                let e = (exp.unsigned_abs() % target.element_order(x) as u64) as u32;
                value = target.mul(value, target.pow(x, e));
            }
            images[k] = Some(value);
        }
        let images = images
            .iter()
            .zip(source.generator_labels())
            .map(|(img, label)| {
                img.ok_or_else(|| {
                    CliError::parse(h.at.clone(), format!("hom {}: generator `{label}` has no image", h.name))
                })
            })
            .collect::<Result<Vec<u32>>>()?;
        GroupHom::from_generator_images(source, target, &images).context(|| format!("{}: hom {}", h.at, h.name))
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn objects(&self) -> impl Iterator<Item = (&str, &Object)> {
        self.objects.iter().map(|(n, o)| (n.as_str(), o))
    }

    pub fn get(&self, name: &str) -> Option<&Object> {
        self.objects.iter().find(|(n, _)| n == name).map(|(_, o)| o)
    }

    /// A declared group, the carrier of a declared fiber product, or a standard group.
    pub fn group(&self, name: &str, at: &Location) -> Result<Arc<FiniteGroup>> {
        match self.get(name) {
            Some(Object::Group(g)) => return Ok(g.clone()),
            Some(Object::FiberProduct(fp)) => return Ok(fp.carrier().clone()),
            Some(Object::Hom(_)) => return Err(CliError::parse(at.clone(), format!("`{name}` is a hom, not a group"))),
            None => {}
        }
        if let Some(g) = self.builtins.borrow().get(name) {
            return Ok(g.clone());
        }
        let g = Arc::new(
            builtin(name, self.cap)
                .ok_or_else(|| CliError::UnknownReference { at: at.clone(), name: name.to_string() })??,
        );
        self.builtins.borrow_mut().insert(name.to_string(), g.clone());
        Ok(g)
    }

    /// A declared surjective hom, or the structure map of a declared fiber product.
    pub fn cover(&self, name: &str, at: &Location) -> Result<Cover> {
        match self.get(name) {
            Some(Object::Hom(h)) => Cover::new(h.clone()).context(|| format!("{at}: hom {name}")),
            Some(Object::FiberProduct(fp)) => Ok(fp.structure_map().clone()),
            Some(Object::Group(_)) => {
                Err(CliError::parse(at.clone(), format!("`{name}` is a group; write `{name}->1` or `id({name})`")))
            }
            None => Err(CliError::UnknownReference { at: at.clone(), name: name.to_string() }),
        }
    }

    pub fn fiber_product(&self, name: &str) -> Option<&Arc<FiberProduct>> {
        match self.get(name) {
            Some(Object::FiberProduct(fp)) => Some(fp),
            _ => None,
        }
    }
}
