//! Text grammar for points, segments, multisegments and representations.
//!
//! ```text
//! point := INT | INT "/" "2"
//! seg   := "[" point ("," point)? "]" ("@" LINEID (":" INT)?)?
//! mult  := "{" (seg ("," seg)*)? "}"
//! rep   := "Z" mult | "St" mult
//! ```
//!
//! `St{...}` is a Langlands parameter and is converted to its Zelevinsky
//! multisegment on parse. Formatting always emits the `Z` form, so
//! `parse(format(v)) == v` holds for every value.

use crate::calculus::langlands_to_zelevinsky;
use crate::core::{IrrRep, Line, Multisegment, Point, Segment};
use crate::error::{Error, Result};

/// Any parsed value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Segment(Segment),
    Multisegment(Multisegment),
    Rep(IrrRep),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { src: text.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn found(&self) -> String {
        match self.src.get(self.pos) {
            Some(c) => format!("'{}'", *c as char),
            None => "end of input".to_string(),
        }
    }

    fn fail<T>(&self, expected: &str) -> Result<T> {
        Err(Error::Parse { pos: self.pos, expected: expected.to_string(), found: self.found() })
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(&format!("'{}'", c as char))
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<i32> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return self.fail("integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        text.parse::<i32>().map_err(|_| Error::Parse {
            pos: start,
            expected: "integer in range".to_string(),
            found: text.to_string(),
        })
    }

    /// A point, returned doubled.
    fn point(&mut self) -> Result<i32> {
        let start = self.pos;
        let n = self.int()?;
        if self.eat(b'/') {
            let d_pos = self.pos;
            let d = self.int()?;
            if d != 2 {
                self.pos = d_pos;
                return self.fail("denominator 2");
            }
            Ok(n)
        } else {
            n.checked_mul(2).ok_or(Error::Parse {
                pos: start,
                expected: "integer in range".to_string(),
                found: n.to_string(),
            })
        }
    }

    fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if self.pos == start || self.src[start].is_ascii_digit() {
            self.pos = start;
            return self.fail("line identifier");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn line_suffix(&mut self) -> Result<Line> {
        if !self.eat(b'@') {
            return Ok(Line::standard());
        }
        let name_pos = self.pos;
        let name = self.ident()?;
        let size = if self.eat(b':') {
            let p = self.pos;
            let k = self.int()?;
            if k < 1 {
                self.pos = p;
                return self.fail("positive line size");
            }
            Some(k as u32)
        } else {
            None
        };
        Line::intern(name, size).map_err(|e| Error::Parse {
            pos: name_pos,
            expected: "consistent line size".to_string(),
            found: e.to_string(),
        })
    }

    fn segment(&mut self) -> Result<Segment> {
        self.expect(b'[')?;
        let start = self.pos;
        let a = self.point()?;
        let b = if self.eat(b',') { self.point()? } else { a };
        self.expect(b']')?;
        if b < a || (b - a) % 2 != 0 {
            self.pos = start;
            return self.fail("b-end not below a-end and an integer apart");
        }
        let line = self.line_suffix()?;
        Ok(Segment::new(line, a, b).expect("checked above"))
    }

    fn multisegment(&mut self) -> Result<Multisegment> {
        self.expect(b'{')?;
        let mut v = Vec::new();
        if !self.eat(b'}') {
            loop {
                v.push(self.segment()?);
                if self.eat(b'}') {
                    break;
                }
                self.expect(b',')?;
            }
        }
        Ok(Multisegment::from_vec(v))
    }

    fn rep(&mut self) -> Result<IrrRep> {
        match self.peek() {
            Some(b'Z') => {
                self.pos += 1;
                Ok(IrrRep::new(self.multisegment()?))
            }
            Some(b'S') if self.src[self.pos..].starts_with(b"St") => {
                self.pos += 2;
                Ok(IrrRep::new(langlands_to_zelevinsky(&self.multisegment()?)))
            }
            _ => self.fail("'Z' or 'St'"),
        }
    }

    fn value(&mut self) -> Result<Value> {
        match self.peek() {
            Some(b'[') => Ok(Value::Segment(self.segment()?)),
            Some(b'{') => Ok(Value::Multisegment(self.multisegment()?)),
            _ => Ok(Value::Rep(self.rep()?)),
        }
    }

    fn finish<T>(&mut self, v: T) -> Result<T> {
        if self.peek().is_some() {
            self.fail("end of input")
        } else {
            Ok(v)
        }
    }
}

pub fn parse_segment(text: &str) -> Result<Segment> {
    let mut p = Parser::new(text);
    let v = p.segment()?;
    p.finish(v)
}

pub fn parse_multisegment(text: &str) -> Result<Multisegment> {
    let mut p = Parser::new(text);
    let v = p.multisegment()?;
    p.finish(v)
}

pub fn parse_rep(text: &str) -> Result<IrrRep> {
    let mut p = Parser::new(text);
    let v = p.rep()?;
    p.finish(v)
}

/// A point written like a degenerate segment body, e.g. `3/2@s`.
pub fn parse_point(text: &str) -> Result<Point> {
    let mut p = Parser::new(text);
    let x = p.point()?;
    let line = p.line_suffix()?;
    p.finish(Point::new(line, x))
}

pub fn parse_value(text: &str) -> Result<Value> {
    let mut p = Parser::new(text);
    let v = p.value()?;
    p.finish(v)
}

/// Accept either a segment or a multisegment, lifting a segment to a singleton.
pub fn parse_segments(text: &str) -> Result<Multisegment> {
    match parse_value(text)? {
        Value::Segment(s) => Ok(Multisegment::from_vec(vec![s])),
        Value::Multisegment(m) => Ok(m),
        Value::Rep(_) => Err(Error::Parse {
            pos: 0,
            expected: "segment or multisegment".to_string(),
            found: "representation".to_string(),
        }),
    }
}

impl std::fmt::Display for Value {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Value::Segment(s) => write!(f, "{s}"),
            Value::Multisegment(m) => write!(f, "{m}"),
            Value::Rep(r) => write!(f, "{r}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_reps() {
        let r = parse_rep("Z{[0],[0],[-1,1]}").unwrap();
        assert_eq!(r.level(), 3);
        assert_eq!(r.to_string(), "Z{[-1,1],[0],[0]}");
        let s = parse_segment("[1/2,3/2]@s").unwrap();
        assert_eq!(s.line().name(), "s");
        assert_eq!(s.a2(), 1);
        assert_eq!(s.b2(), 3);
        assert_eq!(parse_rep(" Z { [ 0 , 1 ] } ").unwrap().to_string(), "Z{[0,1]}");
    }

    #[test]
    fn reports_positions() {
        match parse_rep("Z{[1,0]}") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_rep("Z{[0],}"), Err(Error::Parse { pos: 6, .. })));
        assert!(matches!(parse_rep("Q{}"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_segment("[1/3]"), Err(Error::Parse { .. })));
        assert!(matches!(parse_segment("[0,1/2]"), Err(Error::Parse { .. })));
        assert!(matches!(parse_rep("Z{} x"), Err(Error::Parse { pos: 4, .. })));
    }

    #[test]
    fn langlands_input_converts() {
        assert_eq!(parse_rep("St{[0,2]}").unwrap().to_string(), "Z{[0],[1],[2]}");
        assert_eq!(parse_rep("St{[0]}").unwrap().to_string(), "Z{[0]}");
    }

    #[test]
    fn sized_lines_round_trip() {
        let s = parse_segment("[0]@text_c:2").unwrap();
        assert_eq!(s.abs_len(), 2);
        assert_eq!(s.to_string(), "[0]@text_c:2");
        assert_eq!(parse_segment(&s.to_string()).unwrap(), s);
        assert!(matches!(parse_segment("[0]@text_c:3"), Err(Error::Parse { .. })));
    }
}
