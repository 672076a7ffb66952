//! JSON conventions shared by reports and the command-line tool: complex
//! numbers as `[re, im]` pairs and floats printed with 17 significant digits.

use std::io;

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Serde adapter for `Complex64` as `[re, im]`.
pub mod pair {
    use super::*;

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let v = <[f64; 2]>::deserialize(d)?;
        if !v[0].is_finite() || !v[1].is_finite() {
            return Err(D::Error::custom("complex components must be finite"));
        }
        Ok(Complex64::new(v[0], v[1]))
    }
}

/// Serde adapter for `Vec<Complex64>` as `[[re, im], ...]`.
pub mod pairs {
    use super::*;

    pub fn serialize<S: Serializer>(zs: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
        zs.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
        let v = Vec::<[f64; 2]>::deserialize(d)?;
        v.into_iter()
            .map(|[re, im]| {
                if re.is_finite() && im.is_finite() {
                    Ok(Complex64::new(re, im))
                } else {
                    Err(D::Error::custom("complex components must be finite"))
                }
            })
            .collect()
    }
}

/// Serde adapter for `Option<Complex64>`.
pub mod opt_pair {
    use super::*;

    pub fn serialize<S: Serializer>(z: &Option<Complex64>, s: S) -> Result<S::Ok, S::Error> {
        z.map(|z| [z.re, z.im]).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Complex64>, D::Error> {
        Option::<[f64; 2]>::deserialize(d).map(|v| v.map(|[re, im]| Complex64::new(re, im)))
    }
}

/// Formats a double with 17 significant digits in exponent notation;
/// non-finite values become `null`.
pub fn format_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        "null".to_string()
    }
}

#[derive(Clone, Copy)]
struct Formatter {
    pretty: bool,
    indent: usize,
    has_value: bool,
}

impl Formatter {
    fn newline<W: ?Sized + io::Write>(&self, w: &mut W) -> io::Result<()> {
        w.write_all(b"\n")?;
        for _ in 0..self.indent {
            w.write_all(b"  ")?;
        }
        Ok(())
    }
}

impl serde_json::ser::Formatter for Formatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, v: f64) -> io::Result<()> {
        w.write_all(format_f64(v).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, v: f32) -> io::Result<()> {
        self.write_f64(w, v as f64)
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.indent += 1;
        self.has_value = false;
        w.write_all(b"[")
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.indent -= 1;
        if self.pretty && self.has_value {
            self.newline(w)?;
        }
        w.write_all(b"]")
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        if !first {
            w.write_all(b",")?;
        }
        if self.pretty {
            self.newline(w)?;
        }
        Ok(())
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, _w: &mut W) -> io::Result<()> {
        self.has_value = true;
        Ok(())
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.indent += 1;
        self.has_value = false;
        w.write_all(b"{")
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.indent -= 1;
        if self.pretty && self.has_value {
            self.newline(w)?;
        }
        w.write_all(b"}")
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        if !first {
            w.write_all(b",")?;
        }
        if self.pretty {
            self.newline(w)?;
        }
        Ok(())
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        w.write_all(if self.pretty { b": " } else { b":" })
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, _w: &mut W) -> io::Result<()> {
        self.has_value = true;
        Ok(())
    }
}

/// Serializes `value` with the 17-digit float convention and a trailing newline.
pub fn to_string<T: Serialize + ?Sized>(value: &T, pretty: bool) -> serde_json::Result<String> {
    let mut out = Vec::new();
    let fmt = Formatter { pretty, indent: 0, has_value: false };
    let mut ser = serde_json::Serializer::with_formatter(&mut out, fmt);
    value.serialize(&mut ser)?;
    out.push(b'\n');
    Ok(String::from_utf8(out).expect("serde_json emits UTF-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize, Deserialize, Debug, PartialEq)]
    struct Sample {
        #[serde(with = "pair")]
        z: Complex64,
        #[serde(with = "pairs")]
        zs: Vec<Complex64>,
        r: f64,
    }

    #[test]
    fn floats_round_trip_exactly() {
        let s = Sample {
            z: Complex64::new(0.1, -1.0 / 3.0),
            zs: vec![Complex64::new(1e-300, 5e300), Complex64::new(0.0, -0.0)],
            r: std::f64::consts::PI,
        };
        for pretty in [false, true] {
            let text = to_string(&s, pretty).unwrap();
            let back: Sample = serde_json::from_str(&text).unwrap();
            assert_eq!(back, s);
            assert_eq!(to_string(&back, pretty).unwrap(), text);
        }
    }

    #[test]
    fn compact_layout() {
        let s = Sample { z: Complex64::new(0.5, 0.0), zs: vec![], r: 1.0 };
        assert_eq!(
            to_string(&s, false).unwrap(),
            "{\"z\":[5.0000000000000000e-1,0.0000000000000000e0],\"zs\":[],\"r\":1.0000000000000000e0}\n"
        );
    }

    #[test]
    fn non_finite_becomes_null() {
        assert_eq!(to_string(&f64::INFINITY, false).unwrap(), "null\n");
    }

    #[test]
    fn pretty_layout_nests() {
        let v = serde_json::json!({"a": [1, {"b": []}]});
        assert_eq!(to_string(&v, true).unwrap(), "{\n  \"a\": [\n    1,\n    {\n      \"b\": []\n    }\n  ]\n}\n");
    }
}
