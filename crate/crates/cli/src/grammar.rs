//! Group-spec mini-grammar.
//!
//! ```text
//! expr  := term ('x' term)*
//! term  := '(' expr ')' | atom | fiber | '@' path
//! atom  := '1' | 'C'n | 'D'n | 'S'n | 'A'n | 'SL2('p')' | 'GL2('p')'
//!        | 'NGL2U('p')' | 'Frob('p','d')'
//! fiber := 'fiber(' expr ',' expr ',' 'e=' n ')'
//! ```
//!
//! `D<n>` is the dihedral group of order `n`. A file reference points at a
//! JSON document `{"kind": "perm" | "mat", "modulus": m, "generators": [...]}`;
//! permutations are 0-based image lists, matrices are lists of rows over
//! `Z/m`.

use std::fmt;
use std::path::Path;

use ltoral::group::GroupSpec;
use serde::Deserialize;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupExpr {
    Atom(GroupSpec),
    /// At least two factors, none of them a product.
    Product(Vec<GroupExpr>),
    Fiber { left: Box<GroupExpr>, right: Box<GroupExpr>, e: u64 },
    File(String),
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Atom(s) => write!(f, "{s}"),
            GroupExpr::Product(fs) => {
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" x ")?;
                    }
                    match x {
                        GroupExpr::Product(_) => write!(f, "({x})")?,
                        _ => write!(f, "{x}")?,
                    }
                }
                Ok(())
            }
            GroupExpr::Fiber { left, right, e } => write!(f, "fiber({left},{right},e={e})"),
            GroupExpr::File(p) => write!(f, "@{p}"),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileGroup {
    kind: String,
    #[serde(default)]
    modulus: u64,
    generators: serde_json::Value,
}

impl GroupExpr {
    /// Lowers to a buildable spec, reading file references relative to `base`.
    pub fn to_spec(&self, base: &Path) -> Result<GroupSpec> {
        Ok(match self {
            GroupExpr::Atom(s) => s.clone(),
            GroupExpr::Product(fs) => GroupSpec::Direct(fs.iter().map(|x| x.to_spec(base)).collect::<Result<_>>()?),
            GroupExpr::Fiber { left, right, e } => GroupSpec::Fiber {
                left: Box::new(left.to_spec(base)?),
                right: Box::new(right.to_spec(base)?),
                e: *e,
            },
            GroupExpr::File(p) => read_group_file(&base.join(p))?,
        })
    }
}

pub fn read_group_file(path: &Path) -> Result<GroupSpec> {
    let io = |m: String| CliError::Io { path: path.display().to_string(), message: m };
    let text = std::fs::read_to_string(path).map_err(|e| io(e.to_string()))?;
    let doc: FileGroup = serde_json::from_str(&text).map_err(|e| io(e.to_string()))?;
    let bad = |e: serde_json::Error| CliError::Config(format!("{}: {e}", path.display()));
    match doc.kind.as_str() {
        "perm" => Ok(GroupSpec::Perm { generators: serde_json::from_value(doc.generators).map_err(bad)? }),
        "mat" => Ok(GroupSpec::Matrix { modulus: doc.modulus, generators: serde_json::from_value(doc.generators).map_err(bad)? }),
        k => Err(CliError::Config(format!("{}: unknown kind `{k}`", path.display()))),
    }
}

pub fn parse_group_spec(text: &str) -> Result<GroupExpr> {
    let mut p = Parser { s: text.as_bytes(), pos: 0 };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty group spec"));
    }
    let e = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.s.len()
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn error(&self, message: &str) -> CliError {
        CliError::Parse { pos: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t')) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, lit: &str) -> bool {
        if self.s[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        self.skip_ws();
        if self.eat(lit) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{lit}`")))
        }
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| CliError::Parse { pos: start, message: "number out of range".into() })
    }

    fn expr(&mut self) -> Result<GroupExpr> {
        let mut factors = vec![self.term()?];
        loop {
            self.skip_ws();
            if self.peek() == Some(b'x') {
                self.pos += 1;
                factors.push(self.term()?);
            } else {
                break;
            }
        }
        if factors.len() == 1 {
            return Ok(factors.pop().expect("one factor"));
        }
        let mut flat = Vec::new();
        for f in factors {
            match f {
                GroupExpr::Product(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        Ok(GroupExpr::Product(flat))
    }

    fn term(&mut self) -> Result<GroupExpr> {
        self.skip_ws();
        let start = self.pos;
        if self.eat("(") {
            let e = self.expr()?;
            self.expect(")")?;
            return Ok(e);
        }
        if self.eat("@") {
            while let Some(c) = self.peek() {
                if c.is_ascii_whitespace() || c == b',' || c == b')' {
                    break;
                }
                self.pos += 1;
            }
            if self.pos == start + 1 {
                return Err(self.error("expected a file path"));
            }
            let path = String::from_utf8_lossy(&self.s[start + 1..self.pos]).into_owned();
            return Ok(GroupExpr::File(path));
        }
        if self.eat("fiber(") {
            let left = self.expr()?;
            self.expect(",")?;
            let right = self.expr()?;
            self.expect(",")?;
            self.expect("e=")?;
            let e = self.number()?;
            self.expect(")")?;
            return Ok(GroupExpr::Fiber { left: Box::new(left), right: Box::new(right), e });
        }
        for (kw, ctor) in [
            ("NGL2U(", GroupSpec::Ngl2u as fn(u64) -> GroupSpec),
            ("SL2(", GroupSpec::Sl2),
            ("GL2(", GroupSpec::Gl2),
        ] {
            if self.eat(kw) {
                let p = self.number()?;
                self.expect(")")?;
                return Ok(GroupExpr::Atom(ctor(p)));
            }
        }
        if self.eat("Frob(") {
            let ell = self.number()?;
            self.expect(",")?;
            let d = self.number()?;
            self.expect(")")?;
            return Ok(GroupExpr::Atom(GroupSpec::Frobenius { ell, d }));
        }
        if self.peek() == Some(b'1') && !matches!(self.s.get(self.pos + 1), Some(b'0'..=b'9')) {
            self.pos += 1;
            return Ok(GroupExpr::Atom(GroupSpec::Trivial));
        }
        let letter = self.peek();
        let next_digit = matches!(self.s.get(self.pos + 1), Some(b'0'..=b'9'));
        if let (Some(l @ (b'C' | b'D' | b'S' | b'A')), true) = (letter, next_digit) {
            self.pos += 1;
            let n = self.number()?;
            return Ok(GroupExpr::Atom(match l {
                b'C' => GroupSpec::Cyclic(n),
                b'D' => GroupSpec::Dihedral(n),
                b'S' => GroupSpec::Symmetric(n as usize),
                _ => GroupSpec::Alternating(n as usize),
            }));
        }
        let mut end = start;
        while end < self.s.len() && (self.s[end].is_ascii_alphanumeric() || self.s[end] == b'_') {
            end += 1;
        }
        if end == start {
            return Err(self.error("expected a group"));
        }
        Err(CliError::UnknownAtom { pos: start, name: String::from_utf8_lossy(&self.s[start..end]).into_owned() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom(s: GroupSpec) -> GroupExpr {
        GroupExpr::Atom(s)
    }

    #[test]
    fn atoms_and_products() {
        assert_eq!(parse_group_spec("C3").unwrap(), atom(GroupSpec::Cyclic(3)));
        assert_eq!(
            parse_group_spec("C2 x SL2(5)").unwrap(),
            GroupExpr::Product(vec![atom(GroupSpec::Cyclic(2)), atom(GroupSpec::Sl2(5))])
        );
        assert_eq!(parse_group_spec("C3xC3").unwrap(), parse_group_spec("C3 x C3").unwrap());
        assert_eq!(parse_group_spec("(C2 x C3) x C5").unwrap(), parse_group_spec("C2 x C3 x C5").unwrap());
        assert_eq!(parse_group_spec("Frob(7,3)").unwrap(), atom(GroupSpec::Frobenius { ell: 7, d: 3 }));
        assert_eq!(parse_group_spec(" 1 ").unwrap(), atom(GroupSpec::Trivial));
    }

    #[test]
    fn fiber_node() {
        let e = parse_group_spec("fiber(C2,GL2(3),e=2)").unwrap();
        assert_eq!(e.to_string(), "fiber(C2,GL2(3),e=2)");
        assert!(matches!(e, GroupExpr::Fiber { e: 2, .. }));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_group_spec("C3 x Q8").unwrap_err(), CliError::UnknownAtom { pos: 5, name: "Q8".into() });
        assert!(matches!(parse_group_spec("SL2(5"), Err(CliError::Parse { pos: 5, .. })));
        assert!(matches!(parse_group_spec(""), Err(CliError::Parse { pos: 0, .. })));
        assert!(matches!(parse_group_spec("C3 C3"), Err(CliError::Parse { pos: 3, .. })));
        assert!(matches!(parse_group_spec("fiber(C2,C4,e=)"), Err(CliError::Parse { pos: 14, .. })));
    }
}
