//! A small expression language over characters.
//!
//! ```text
//! expr    := term (('+' | '⊕' | '-') term)*
//! term    := factor (('*' | '⊗') factor)*
//! factor  := primary ('(' signed-int ')')*        -- Tate twist
//! primary := 'std' | 'H' | 'trivial' | 'Q' | INT
//!          | ('Λ' | 'L') ['^'] INT '(' expr ')'
//!          | ('S' | 'Sym') ['^'] INT '(' expr ')'
//!          | 'V' '[' INT (',' INT)* ']'
//!          | '(' expr ')'
//! ```
//!
//! `std`/`H` is weight -1, `trivial`/`Q` weight 0, `V[λ]` weight -|λ|, and an
//! integer literal `n` is `n` copies of the trivial module.

use crate::error::{Error, Result};

use super::{exterior_power, symmetric_power, weyl_character, Character};

pub fn evaluate(g: usize, source: &str) -> Result<Character> {
    let mut p = Parser {
        src: source,
        pos: 0,
        g,
    };
    let c = p.expr()?;
    p.skip_ws();
    if p.pos != source.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(c)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    g: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{token}'")))
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let rest = self.rest();
        let neg = rest.starts_with('-');
        let body = if neg { &rest[1..] } else { rest };
        let digits = body.chars().take_while(char::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.error("expected an integer"));
        }
        let len = digits + usize::from(neg);
        let value = rest[..len]
            .parse::<i64>()
            .map_err(|_| self.error("integer out of range"))?;
        self.pos += len;
        Ok(value)
    }

    fn peek_int(&mut self) -> bool {
        self.skip_ws();
        let r = self.rest();
        r.starts_with(|c: char| c.is_ascii_digit())
            || (r.starts_with('-') && r[1..].starts_with(|c: char| c.is_ascii_digit()))
    }

    fn expr(&mut self) -> Result<Character> {
        let mut acc = self.term()?;
        loop {
            if self.eat("+") || self.eat("⊕") {
                acc = acc.add(&self.term()?)?;
            } else if self.eat("-") {
                acc = acc.sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Character> {
        let mut acc = self.factor()?;
        while self.eat("*") || self.eat("⊗") {
            acc = acc.tensor(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Character> {
        let mut c = self.primary()?;
        loop {
            let save = self.pos;
            if self.eat("(") && self.peek_int() {
                let r = self.int()?;
                self.expect(")")?;
                c = c.twist(r as i32);
            } else {
                self.pos = save;
                return Ok(c);
            }
        }
    }

    fn power_arg(&mut self) -> Result<(usize, Character)> {
        self.eat("^");
        let k = self.int()?;
        if k < 0 {
            return Err(self.error("power must be nonnegative"));
        }
        self.expect("(")?;
        let inner = self.expr()?;
        self.expect(")")?;
        Ok((k as usize, inner))
    }

    fn primary(&mut self) -> Result<Character> {
        let g = self.g;
        if self.peek_int() {
            let n = self.int()?;
            return Ok(Character::trivial(g).scale(n));
        }
        if self.eat("(") {
            let c = self.expr()?;
            self.expect(")")?;
            return Ok(c);
        }
        for kw in ["std", "H"] {
            if self.eat(kw) {
                return Ok(Character::standard(g));
            }
        }
        for kw in ["trivial", "Q"] {
            if self.eat(kw) {
                return Ok(Character::trivial(g));
            }
        }
        for kw in ["Λ", "L"] {
            if self.eat(kw) {
                let (k, inner) = self.power_arg()?;
                return Ok(exterior_power(&inner, k));
            }
        }
        for kw in ["Sym", "S"] {
            if self.eat(kw) {
                let (k, inner) = self.power_arg()?;
                return Ok(symmetric_power(&inner, k));
            }
        }
        if self.eat("V") {
            self.expect("[")?;
            let mut parts = Vec::new();
            if !self.eat("]") {
                loop {
                    let x = self.int()?;
                    if x < 0 {
                        return Err(self.error("partition parts must be nonnegative"));
                    }
                    parts.push(x as u32);
                    if self.eat("]") {
                        break;
                    }
                    self.expect(",")?;
                }
            }
            return weyl_character(g, &parts);
        }
        Err(self.error("expected a character expression"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{decompose, IrrepLabel, WeightedModuleDescriptor};

    #[test]
    fn primitive_cubic() {
        let c = evaluate(3, "Λ3(std) - std").unwrap();
        assert_eq!(c.dimension(), 14);
        let d = decompose(3, &c).unwrap();
        assert_eq!(d.partition_multiplicity(&[1, 1, 1]), 1);
        assert_eq!(d.iter().count(), 1);
    }

    #[test]
    fn weights_propagate() {
        let c = evaluate(4, "Λ2(std) - trivial(1)").unwrap();
        assert_eq!(c.weight(), Some(-2));
        assert_eq!(
            decompose(4, &c).unwrap(),
            WeightedModuleDescriptor::single(IrrepLabel::new(vec![1, 1], 0).unwrap())
        );
        assert_eq!(c.dimension(), 27);
    }

    #[test]
    fn ascii_and_twists() {
        let a = evaluate(3, "(L^3(H) - H(1))(-1)").unwrap();
        assert_eq!(a.weight(), Some(-1));
        let b = evaluate(3, "V[1,1,1](-1)").unwrap();
        assert_eq!(a, b);
        assert_eq!(evaluate(3, "2*Q").unwrap().dimension(), 2);
        assert_eq!(evaluate(3, "S2(std)").unwrap().dimension(), 21);
    }

    #[test]
    fn errors_carry_position() {
        assert!(matches!(evaluate(3, "std +"), Err(Error::Parse { .. })));
        assert!(matches!(
            evaluate(3, "std)"),
            Err(Error::Parse { pos: 3, .. })
        ));
        assert!(matches!(
            evaluate(2, "V[1,1,1]"),
            Err(Error::PartitionTooLong { .. })
        ));
    }
}
