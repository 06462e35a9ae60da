//! Input documents (schema "1"): JSON with groups, modules and factor sets.
//! Integers may be JSON numbers or decimal strings.

use lltori::corpus;
use lltori::extgrp::FactorSet;
use lltori::gmod::{FiniteGroup, GammaModule, Subgroup};
use lltori::int::Int;
use lltori::zlin::{FgAb, IntMatrix};
use serde_json::Value;
use std::fmt;
use std::sync::Arc;

pub const SCHEMA: &str = "1";

#[derive(Debug, Clone)]
pub struct InputError {
    pub path: String,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

pub type Parsed<T> = Result<T, InputError>;

pub fn err<T>(path: &str, message: impl Into<String>) -> Parsed<T> {
    Err(InputError { path: path.to_string(), message: message.into() })
}

/// A JSON value together with its location in the document.
#[derive(Clone, Copy)]
pub struct Node<'a> {
    pub value: &'a Value,
    path: &'a str,
}

/// Owned path strings for child nodes.
pub struct At {
    path: String,
}

impl At {
    pub fn path(&self) -> &str {
        &self.path
    }

    pub fn node<'a>(&'a self, value: &'a Value) -> Node<'a> {
        Node { value, path: &self.path }
    }
}

impl<'a> Node<'a> {
    pub fn root(value: &'a Value) -> Node<'a> {
        Node { value, path: "" }
    }

    pub fn path(&self) -> &str {
        self.path
    }

    pub fn child_path(&self, key: &str) -> At {
        At { path: if self.path.is_empty() { key.to_string() } else { format!("{}.{}", self.path, key) } }
    }

    pub fn index_path(&self, i: usize) -> At {
        At { path: format!("{}[{}]", self.path, i) }
    }

    pub fn get(&self, key: &str) -> Option<&'a Value> {
        self.value.get(key)
    }

    pub fn has(&self, key: &str) -> bool {
        self.get(key).is_some_and(|v| !v.is_null())
    }

    pub fn array(&self) -> Parsed<&'a Vec<Value>> {
        self.value.as_array().ok_or_else(|| InputError { path: self.path.to_string(), message: "expected an array".into() })
    }

    pub fn int(&self) -> Parsed<Int> {
        match self.value {
            Value::Number(n) => match n.as_i64() {
                Some(x) => Ok(Int::from(x)),
                None => n.to_string().parse().or_else(|_| err(self.path, format!("{} is not an integer", n))),
            },
            Value::String(s) => s.trim().parse().or_else(|_| err(self.path, format!("\"{}\" is not an integer", s))),
            _ => err(self.path, "expected an integer"),
        }
    }

    pub fn i64(&self) -> Parsed<i64> {
        self.int()?.to_i64().map_or_else(|| err(self.path, "integer out of range"), Ok)
    }

    pub fn usize(&self) -> Parsed<usize> {
        let x = self.i64()?;
        usize::try_from(x).or_else(|_| err(self.path, format!("expected a nonnegative integer, got {}", x)))
    }

    pub fn str(&self) -> Parsed<&'a str> {
        self.value.as_str().ok_or_else(|| InputError { path: self.path.to_string(), message: "expected a string".into() })
    }
}

/// Required field.
pub fn field<'a>(n: &Node<'a>, key: &str, at: &'a At) -> Parsed<Node<'a>> {
    match n.get(key) {
        Some(v) if !v.is_null() => Ok(at.node(v)),
        _ => err(&at.path, "missing field"),
    }
}

pub fn ints(n: &Node) -> Parsed<Vec<Int>> {
    n.array()?.iter().enumerate().map(|(i, v)| n.index_path(i).node(v).int()).collect()
}

pub fn usizes(n: &Node) -> Parsed<Vec<usize>> {
    n.array()?.iter().enumerate().map(|(i, v)| n.index_path(i).node(v).usize()).collect()
}

pub fn matrix(n: &Node) -> Parsed<IntMatrix> {
    let rows = n.array()?;
    let mut out: Vec<Vec<Int>> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let at = n.index_path(i);
        out.push(ints(&at.node(r))?);
    }
    let cols = out.first().map_or(0, |r| r.len());
    if let Some(i) = out.iter().position(|r| r.len() != cols) {
        return err(&n.index_path(i).path, format!("row has {} entries, expected {}", out[i].len(), cols));
    }
    Ok(IntMatrix::from_int_rows(&out, cols))
}

fn cyclic_shorthand(s: &str, path: &str) -> Parsed<FiniteGroup> {
    let t = s.trim();
    let n = t.strip_prefix('C').map(str::trim).and_then(|x| x.parse::<usize>().ok());
    match n {
        Some(n) if (1..=4096).contains(&n) => Ok(FiniteGroup::cyclic(n)),
        _ => err(path, format!("\"{}\" is not a group shorthand (expected \"C n\")", s)),
    }
}

/// "C n", "product [C n, C m]", {"product": ["C n", ...]} or {"table": [[...]]}.
pub fn group(n: &Node) -> Parsed<Arc<FiniteGroup>> {
    let g = match n.value {
        Value::String(s) => {
            let t = s.trim();
            if let Some(rest) = t.strip_prefix("product") {
                let inner = rest.trim().strip_prefix('[').and_then(|r| r.strip_suffix(']'));
                let Some(inner) = inner else {
                    return err(n.path(), format!("\"{}\" is not a product shorthand (expected \"product [C n, C m]\")", s));
                };
                let factors: Vec<FiniteGroup> = inner.split(',').map(|f| cyclic_shorthand(f, n.path())).collect::<Parsed<_>>()?;
                let label = factors.iter().map(|f| f.label().to_string()).collect::<Vec<_>>().join("x");
                FiniteGroup::product_of(&factors).with_label(&label)
            } else {
                cyclic_shorthand(t, n.path())?
            }
        }
        Value::Object(_) => {
            if n.has("product") {
                let at = n.child_path("product");
                let p = at.node(n.get("product").unwrap());
                let factors: Vec<FiniteGroup> = p
                    .array()?
                    .iter()
                    .enumerate()
                    .map(|(i, v)| {
                        let at = p.index_path(i);
                        let node = at.node(v);
                        cyclic_shorthand(node.str()?, node.path())
                    })
                    .collect::<Parsed<_>>()?;
                let label = factors.iter().map(|f| f.label().to_string()).collect::<Vec<_>>().join("x");
                FiniteGroup::product_of(&factors).with_label(&label)
            } else {
                let at = n.child_path("table");
                let t = field(n, "table", &at)?;
                let rows = t.array()?.iter().enumerate().map(|(i, r)| usizes(&t.index_path(i).node(r))).collect::<Parsed<Vec<_>>>()?;
                FiniteGroup::from_table(rows).or_else(|e| err(t.path(), e.to_string()))?
            }
        }
        _ => return err(n.path(), "expected a group shorthand string or an object"),
    };
    Ok(Arc::new(g))
}

/// Module over `g`: {"free_rank", "torsion", "action" | "character"} or
/// {"kind": "regular" | "augmentation"}.
pub fn module(n: &Node, g: &Arc<FiniteGroup>) -> Parsed<GammaModule> {
    if n.has("kind") {
        let at = n.child_path("kind");
        return match field(n, "kind", &at)?.str()? {
            "regular" => Ok(corpus::regular(g)),
            "augmentation" => Ok(corpus::augmentation(g)),
            other => err(&at.path, format!("unknown module kind \"{}\"", other)),
        };
    }
    let free = if n.has("free_rank") {
        let at = n.child_path("free_rank");
        field(n, "free_rank", &at)?.usize()?
    } else {
        0
    };
    let torsion = if n.has("torsion") {
        let at = n.child_path("torsion");
        ints(&field(n, "torsion", &at)?)?
    } else {
        Vec::new()
    };
    let carrier = FgAb::new(free, torsion).or_else(|e| err(&n.child_path("torsion").path, e.to_string()))?;
    let k = carrier.ngens();
    if n.has("action") && n.has("character") {
        return err(n.path(), "give either \"action\" or \"character\", not both");
    }
    let action: Vec<IntMatrix> = if n.has("action") {
        let at = n.child_path("action");
        let a = field(n, "action", &at)?;
        let mats = a.array()?;
        if mats.len() != g.order() {
            return err(a.path(), format!("{} matrices for a group of order {}", mats.len(), g.order()));
        }
        let mut out = Vec::new();
        for (i, m) in mats.iter().enumerate() {
            let at = a.index_path(i);
            let mat = matrix(&at.node(m))?;
            if mat.rows() != k || mat.cols() != k {
                return err(&at.path, format!("expected a {}x{} matrix", k, k));
            }
            out.push(mat);
        }
        out
    } else if n.has("character") {
        let at = n.child_path("character");
        let c = field(n, "character", &at)?;
        let chi = ints(&c)?;
        if k != 1 {
            return err(c.path(), "a character needs a carrier of rank one");
        }
        if chi.len() != g.order() {
            return err(c.path(), format!("{} values for a group of order {}", chi.len(), g.order()));
        }
        chi.into_iter().map(|x| IntMatrix::from_int_rows(&[vec![x]], 1)).collect()
    } else {
        vec![IntMatrix::identity(k); g.order()]
    };
    GammaModule::new(g.clone(), carrier, action).or_else(|e| err(n.path(), e.to_string()))
}

/// Factor set on `a`: a list of |Γ|² values (row-major in (σ, τ)), or "zero",
/// or "carry" (δ(a,b) = e₀ when a + b ≥ n, for Γ = C_n).
pub fn factor_set(n: &Node, a: &GammaModule) -> Parsed<FactorSet> {
    let g = a.group();
    if let Value::String(s) = n.value {
        return match s.as_str() {
            "zero" => Ok(FactorSet::zero(a)),
            "carry" => {
                if g.label() != format!("C{}", g.order()) {
                    return err(n.path(), "\"carry\" needs a cyclic group given as \"C n\"");
                }
                corpus::carry_factor_set(g.order(), a).or_else(|e| err(n.path(), e.to_string()))
            }
            other => err(n.path(), format!("unknown factor set shorthand \"{}\"", other)),
        };
    }
    let rows = n.array()?;
    let ord = g.order();
    if rows.len() != ord * ord {
        return err(n.path(), format!("{} values, expected |Γ|² = {}", rows.len(), ord * ord));
    }
    let mut vals = Vec::with_capacity(rows.len());
    for (i, r) in rows.iter().enumerate() {
        let at = n.index_path(i);
        let v = ints(&at.node(r))?;
        if v.len() != a.rank() {
            return err(&at.path, format!("value has {} coordinates, expected {}", v.len(), a.rank()));
        }
        vals.push(a.carrier().reduce(&v));
    }
    FactorSet::new(a.clone(), vals).or_else(|e| err(n.path(), e.to_string()))
}

pub fn subgroup(n: &Node, g: &Arc<FiniteGroup>) -> Parsed<Subgroup> {
    let els = usizes(n)?;
    if let Some(&x) = els.iter().find(|&&x| x >= g.order()) {
        return err(n.path(), format!("element {} is out of range for a group of order {}", x, g.order()));
    }
    Subgroup::new(g, els).or_else(|e| err(n.path(), e.to_string()))
}
