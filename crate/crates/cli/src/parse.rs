//! Variety specs and the bundle-expression grammar.
//!
//! ```text
//! expr   := term ('+' term)*
//! term   := factor (('⊗' | '*' | 'x') factor)*
//! factor := 'schur(' int (',' int)* ')' ':' atom
//!         | atom
//!         | 'O(' linear ')'
//! atom   := cotangent | tangent | log-cotangent | log-tangent
//!         | ambient-cotangent | ambient-tangent
//! linear := signed sum of integers and multiples of 'd', e.g. 3, -d, 2d-5
//! ```
//!
//! A term holds at most one non-line factor; its line factors are multiplied
//! into a single twist.

use jetdiff::chow::{Atom, BundleExpr, Degree, Twist, VarietySpec};
use jetdiff::combinat::SchurWeight;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "at position {}: {}", self.position, self.message)
    }
}

type PResult<T> = Result<T, ParseError>;

/// `p3`, `p4`, `hypersurface:n=4[,d=7]`, `logpair:n=3[,d=7]`.
pub fn parse_variety(s: &str, d: Option<i64>) -> Result<VarietySpec, String> {
    let s = s.trim();
    let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
    let mut n: Option<u8> = None;
    let mut deg = d.map(Degree::Fixed);
    for kv in rest.split(',').filter(|x| !x.is_empty()) {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| format!("expected key=value, got '{}'", kv))?;
        match k.trim() {
            "n" => n = Some(v.trim().parse().map_err(|_| format!("bad n '{}'", v))?),
            "d" => {
                let v = v.trim();
                deg = if v == "d" {
                    Some(Degree::Symbolic)
                } else {
                    Some(Degree::Fixed(
                        v.parse().map_err(|_| format!("bad d '{}'", v))?,
                    ))
                }
            }
            other => return Err(format!("unknown key '{}'", other)),
        }
    }
    let deg = deg.unwrap_or(Degree::Symbolic);
    let r = match kind {
        "p3" => VarietySpec::projective_space(3),
        "p4" => VarietySpec::projective_space(4),
        "hypersurface" => VarietySpec::hypersurface(n.unwrap_or(4), deg),
        "logpair" => {
            if n.is_some_and(|n| n != 3) {
                return Err("log pairs live on P^3 (n=3)".into());
            }
            VarietySpec::log_pair(deg)
        }
        other => return Err(format!("unknown variety '{}'", other)),
    };
    r.map_err(|e| e.to_string())
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            chars: src.char_indices().collect(),
            pos: 0,
            src,
        }
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.src.len(), |c| c.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> PResult<T> {
        Err(ParseError {
            position: self.offset(),
            message: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.1.is_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c))
        }
    }

    fn word(&mut self) -> String {
        self.skip_ws();
        let mut w = String::new();
        while let Some(&(_, c)) = self.chars.get(self.pos) {
            if c.is_ascii_alphanumeric() || c == '-' || c == '_' {
                w.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        w
    }

    fn int(&mut self) -> PResult<i64> {
        self.skip_ws();
        let start = self.pos;
        let mut s = String::new();
        if self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.1 == '-' || c.1 == '+')
        {
            s.push(self.chars[self.pos].1);
            self.pos += 1;
        }
        while let Some(&(_, c)) = self.chars.get(self.pos) {
            if c.is_ascii_digit() {
                s.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        s.parse().or_else(|_| {
            self.pos = start;
            self.err("expected an integer")
        })
    }

    /// Linear form in `d`.
    fn linear(&mut self) -> PResult<Twist> {
        let mut t = Twist::default();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    1
                }
                Some('-') => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => break,
            };
            first = false;
            self.skip_ws();
            let mut coef: Option<i64> = None;
            if self
                .chars
                .get(self.pos)
                .is_some_and(|c| c.1.is_ascii_digit())
            {
                coef = Some(self.int()?);
            }
            self.eat('*');
            if self.eat('d') {
                t.per_degree += sign * coef.unwrap_or(1);
            } else if let Some(c) = coef {
                t.constant += sign * c;
            } else {
                return self.err("expected an integer or 'd'");
            }
        }
        Ok(t)
    }

    fn atom(&mut self) -> PResult<Atom> {
        let at = self.offset();
        let w = self.word();
        Atom::from_name(&w).ok_or(ParseError {
            position: at,
            message: format!("unknown bundle '{}'", w),
        })
    }

    fn factor(&mut self) -> PResult<Factor> {
        self.skip_ws();
        let save = self.pos;
        let at = self.offset();
        let w = self.word();
        match w.as_str() {
            "O" => {
                self.expect('(')?;
                let t = self.linear()?;
                self.expect(')')?;
                Ok(Factor::Line(t))
            }
            "schur" => {
                self.expect('(')?;
                let mut weight = vec![self.int()?];
                while self.eat(',') {
                    weight.push(self.int()?);
                }
                self.expect(')')?;
                self.expect(':')?;
                let atom = self.atom()?;
                let w = SchurWeight::new(weight).map_err(|e| ParseError {
                    position: at,
                    message: e.to_string(),
                })?;
                Ok(Factor::Bundle(BundleExpr::Schur(w, atom)))
            }
            "" => self.err("expected a bundle"),
            _ => {
                self.pos = save;
                Ok(Factor::Bundle(BundleExpr::Atom(self.atom()?)))
            }
        }
    }

    fn is_tensor(&mut self) -> bool {
        match self.peek() {
            Some('⊗') | Some('*') => {
                self.pos += 1;
                true
            }
            Some('x') => {
                // `x` is a separator only when followed by whitespace or `O(`.
                let next = self.chars.get(self.pos + 1).map(|c| c.1);
                if next.is_some_and(|c| c.is_whitespace() || c == 'O') {
                    self.pos += 1;
                    true
                } else {
                    false
                }
            }
            _ => false,
        }
    }

    fn term(&mut self) -> PResult<BundleExpr> {
        let start = self.offset();
        let mut bundle: Option<BundleExpr> = None;
        let mut twist = Twist::default();
        loop {
            match self.factor()? {
                Factor::Line(t) => {
                    twist.constant += t.constant;
                    twist.per_degree += t.per_degree;
                }
                Factor::Bundle(b) => {
                    if bundle.is_some() {
                        return Err(ParseError {
                            position: start,
                            message: "only one non-line factor per term is supported".into(),
                        });
                    }
                    bundle = Some(b);
                }
            }
            if !self.is_tensor() {
                break;
            }
        }
        Ok(match bundle {
            Some(b) => b.twisted(twist),
            None => BundleExpr::Line(twist),
        })
    }

    fn expr(&mut self) -> PResult<BundleExpr> {
        let mut terms = vec![self.term()?];
        while self.eat('+') {
            terms.push(self.term()?);
        }
        if self.peek().is_some() {
            return self.err("unexpected trailing input");
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            BundleExpr::Sum(terms)
        })
    }
}

enum Factor {
    Line(Twist),
    Bundle(BundleExpr),
}

pub fn parse_bundle(s: &str) -> PResult<BundleExpr> {
    Parser::new(s).expr()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundles() {
        assert_eq!(parse_bundle("O(2)").unwrap(), BundleExpr::line(2));
        assert_eq!(
            parse_bundle("O(2d-5)").unwrap(),
            BundleExpr::Line(Twist::with_degree(-5, 2))
        );
        assert_eq!(
            parse_bundle("O(-d)").unwrap(),
            BundleExpr::Line(Twist::with_degree(0, -1))
        );
        let s = BundleExpr::schur(&[2, 1, 0], Atom::CotangentX).unwrap();
        assert_eq!(parse_bundle("schur(2,1,0):cotangent").unwrap(), s);
        for sep in ["⊗", "*", "x"] {
            let e = parse_bundle(&format!("schur(2,1,0):cotangent {} O(3)", sep)).unwrap();
            assert_eq!(e, s.clone().twisted(Twist::new(3)));
        }
        let sum = parse_bundle("cotangent + O(1)").unwrap();
        assert!(matches!(sum, BundleExpr::Sum(ref v) if v.len() == 2));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_bundle("schur(2,1:cotangent").unwrap_err();
        assert_eq!(e.position, 9);
        let e = parse_bundle("O(2) ⊗ bogus").unwrap_err();
        assert_eq!(e.position, "O(2) ⊗ ".len());
        assert!(parse_bundle("").is_err());
        assert!(parse_bundle("schur(1,2):cotangent").is_err());
    }

    #[test]
    fn varieties() {
        assert_eq!(
            parse_variety("p3", None).unwrap(),
            VarietySpec::ProjectiveSpace(3)
        );
        assert_eq!(
            parse_variety("hypersurface:n=4,d=7", None).unwrap(),
            VarietySpec::hypersurface(4, Degree::Fixed(7)).unwrap()
        );
        assert_eq!(
            parse_variety("logpair:n=3", Some(5)).unwrap(),
            VarietySpec::log_pair(Degree::Fixed(5)).unwrap()
        );
        assert!(parse_variety("p7", None).is_err());
        assert!(parse_variety("hypersurface:n=4,d=0", None).is_err());
    }
}
