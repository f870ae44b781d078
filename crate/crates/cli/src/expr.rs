//! Argument expressions naming covers and modules.
//!
//! ```text
//! cover  := atom ('^' n)?
//! atom   := fprod(cover, ...) | then(cover, cover) | id(group) | group->1 | name
//! module := F<p>triv | ker(cover)
//! ```

use std::sync::Arc;

use fundament_core::fprod::fiber_product_capped;
use fundament_core::module::{module_from_cover, GModule};
use fundament_core::{Cover, FiniteGroup};

use crate::error::{CliError, Context, Location, Result};
use crate::lex::Cursor;
use crate::workspace::Workspace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverExpr {
    /// A declared hom or fiber product.
    Name(String, Location),
    /// `G ↠ 1`.
    ToTrivial(String, Location),
    Identity(String, Location),
    /// Structure map of the fiber product of the operands.
    Fprod(Vec<CoverExpr>, Location),
    /// `first` followed by `second`.
    Then(Box<CoverExpr>, Box<CoverExpr>, Location),
    /// Fiber product of `n` copies; `n = 0` is the identity of the target.
    Power(Box<CoverExpr>, u32, Location),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleExpr {
    /// One-dimensional trivial module over `F_p`.
    Trivial(u32, Location),
    /// Kernel of a cover, as a module over its target.
    Kernel(CoverExpr),
}

impl CoverExpr {
    pub fn location(&self) -> &Location {
        match self {
            CoverExpr::Name(_, at)
            | CoverExpr::ToTrivial(_, at)
            | CoverExpr::Identity(_, at)
            | CoverExpr::Fprod(_, at)
            | CoverExpr::Then(_, _, at)
            | CoverExpr::Power(_, _, at) => at,
        }
    }
}

pub fn argument_location(index: usize) -> Location {
    Location { source: format!("argument {index}"), line: 1, column: 1 }
}

fn cursor<'a>(text: &'a str, at: &'a Location) -> Cursor<'a> {
    Cursor::new(text, &at.source, at.line, at.column)
}

pub fn parse_cover(text: &str, at: &Location) -> Result<CoverExpr> {
    let mut c = cursor(text, at);
    let e = cover(&mut c)?;
    c.expect_end()?;
    Ok(e)
}

/// A comma-separated list of covers.
pub fn parse_cover_list(text: &str, at: &Location) -> Result<Vec<CoverExpr>> {
    let mut c = cursor(text, at);
    let list = cover_list(&mut c)?;
    c.expect_end()?;
    Ok(list)
}

pub fn parse_module(text: &str, at: &Location) -> Result<ModuleExpr> {
    let mut c = cursor(text, at);
    let (word, loc) = c.expect_ident("a module")?;
    let e = if word == "ker" && c.eat("(") {
        let inner = cover(&mut c)?;
        c.expect(")")?;
        ModuleExpr::Kernel(inner)
    } else if let Some(p) = word.strip_prefix('F').and_then(|w| w.strip_suffix("triv")).and_then(|p| p.parse().ok()) {
        if !fundament_core::linalg::is_prime(p) {
            return Err(CliError::parse(loc, format!("{p} is not a prime")));
        }
        ModuleExpr::Trivial(p, loc)
    } else {
        return Err(CliError::parse(loc, format!("`{word}` is not a module; use F<p>triv or ker(<cover>)")));
    };
    c.expect_end()?;
    Ok(e)
}

pub fn parse_group(text: &str, at: &Location) -> Result<(String, Location)> {
    let mut c = cursor(text, at);
    let g = c.expect_ident("a group name")?;
    c.expect_end()?;
    Ok(g)
}

fn cover_list(c: &mut Cursor) -> Result<Vec<CoverExpr>> {
    let mut list = vec![cover(c)?];
    while c.eat(",") {
        list.push(cover(c)?);
    }
    Ok(list)
}

fn cover(c: &mut Cursor) -> Result<CoverExpr> {
    let base = atom(c)?;
    if c.eat("^") {
        let (n, at) = c.integer()?;
        let n = u32::try_from(n).map_err(|_| CliError::parse(at.clone(), "exponent must be nonnegative"))?;
        return Ok(CoverExpr::Power(Box::new(base), n, at));
    }
    Ok(base)
}

fn atom(c: &mut Cursor) -> Result<CoverExpr> {
    let (word, at) = c.expect_ident("a cover")?;
    if c.eat("(") {
        let e = match word.as_str() {
            "fprod" => CoverExpr::Fprod(cover_list(c)?, at),
            "then" => {
                let first = cover(c)?;
                c.expect(",")?;
                CoverExpr::Then(Box::new(first), Box::new(cover(c)?), at)
            }
            "id" => CoverExpr::Identity(c.expect_ident("a group name")?.0, at),
            _ => return Err(CliError::parse(at, format!("unknown function `{word}`"))),
        };
        c.expect(")")?;
        return Ok(e);
    }
    if c.eat("->") {
        let target = c.expect_ident("`1`")?;
        if target.0 != "1" {
            return Err(CliError::parse(target.1, "only `->1` is supported after a group name"));
        }
        return Ok(CoverExpr::ToTrivial(word, at));
    }
    Ok(CoverExpr::Name(word, at))
}

impl Workspace {
    pub fn eval_cover(&self, e: &CoverExpr) -> Result<Cover> {
        match e {
            CoverExpr::Name(name, at) => self.cover(name, at),
            CoverExpr::ToTrivial(g, at) => Ok(Cover::to_trivial(&self.group(g, at)?)),
            CoverExpr::Identity(g, at) => Ok(Cover::identity(&self.group(g, at)?)),
            CoverExpr::Fprod(list, at) => {
                let covers = list.iter().map(|e| self.eval_cover(e)).collect::<Result<Vec<_>>>()?;
                self.fprod_structure_map(&covers, at)
            }
            CoverExpr::Then(first, second, at) => {
                let (a, b) = (self.eval_cover(first)?, self.eval_cover(second)?);
                a.then(&b).context(|| format!("{at}: composite"))
            }
            CoverExpr::Power(base, n, at) => {
                let pi = self.eval_cover(base)?;
                if *n == 0 {
                    return Ok(Cover::identity(pi.target()));
                }
                self.fprod_structure_map(&vec![pi; *n as usize], at)
            }
        }
    }

    fn fprod_structure_map(&self, covers: &[Cover], at: &Location) -> Result<Cover> {
        let base = covers[0].target().clone();
        let fp = fiber_product_capped(&base, covers, self.cap()).context(|| format!("{at}: fiber product"))?;
        Ok(fp.structure_map().clone())
    }

    /// The module over `group` named by `e`.
    pub fn eval_module(&self, e: &ModuleExpr, group: &Arc<FiniteGroup>) -> Result<GModule> {
        match e {
            ModuleExpr::Trivial(p, _) => Ok(GModule::trivial(group, *p, 1)),
            ModuleExpr::Kernel(inner) => {
                let pi = self.eval_cover(inner)?;
                let at = inner.location();
                if pi.target().as_ref() != group.as_ref() {
                    return Err(CliError::parse(at.clone(), "cover does not target the given group"));
                }
                module_from_cover(&pi, pi.kernel()).context(|| format!("{at}: kernel module"))
            }
        }
    }
}
