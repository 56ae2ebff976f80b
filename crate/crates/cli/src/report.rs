//! JSON and CSV serialisation of a spectrum report.
//!
//! JSON keys come out sorted and every float is written with 17 significant
//! digits, so equal reports give equal bytes.

use std::io;

use angle_spectrum_core::{BoundaryPoint, GeneratorSet, Geodesic, GeodesicShape, Orientation, SpectrumReport};
use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::{json, Value};

/// Pretty printing with floats as `d.dddddddddddddddde±x`.
struct FixedDigits<'a>(PrettyFormatter<'a>);

impl Formatter for FixedDigits<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, f64::from(value))
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

fn boundary_json(p: BoundaryPoint) -> Value {
    match p {
        BoundaryPoint::Finite(x) => json!(x),
        BoundaryPoint::Infinity => json!("inf"),
    }
}

fn axis_json(g: &Geodesic) -> Value {
    let mut v = match g.shape() {
        GeodesicShape::Semicircle { center, radius } => json!({
            "kind": "semicircle",
            "center": center,
            "radius": radius,
        }),
        GeodesicShape::Vertical { x } => json!({ "kind": "vertical", "x": x }),
    };
    v["from"] = boundary_json(g.from());
    v["to"] = boundary_json(g.to());
    v
}

/// Where the generators came from, recorded under `params.source`.
pub fn report_value(report: &SpectrumReport, group: &GeneratorSet, source: &str) -> Value {
    let names = group.names();
    let b = &report.bounds;
    let params = json!({
        "source": source,
        "max_word_len": b.max_word_len,
        "max_trace": b.max_trace,
        "conj_len": b.conj_len,
        "qmax": b.qmax,
        "eps_rat": b.eps_rat,
        "eps_cluster": b.eps_cluster,
        "degree_bound": report.degree_bound.get(),
        "orientation": match b.orientation {
            Orientation::Unoriented => "unoriented",
            Orientation::Oriented => "oriented",
        },
    });
    let generators: Vec<Value> = group
        .gens()
        .iter()
        .zip(names)
        .map(|(m, name)| {
            let [a, b, c, d] = m.entries();
            json!({ "name": name, "matrix": [[a, b], [c, d]] })
        })
        .collect();
    let classes: Vec<Value> = report
        .classes
        .iter()
        .map(|c| {
            json!({
                "word": c.rep.word.display_with(names).to_string(),
                "trace": c.trace,
                "length": c.length,
                "axis": axis_json(&c.axis),
            })
        })
        .collect();
    let records: Vec<Value> = report
        .records
        .iter()
        .map(|r| {
            json!({
                "class_i": r.class_i,
                "class_j": r.class_j,
                "conjugator": r.conjugator.display_with(names).to_string(),
                "point": { "x": r.point.x, "y": r.point.y },
                "theta": r.theta,
                "cos2": r.cos2,
            })
        })
        .collect();
    let angle_set: Vec<Value> = report
        .angle_set
        .iter()
        .map(|c| json!({ "theta": c.theta, "multiplicity": c.multiplicity }))
        .collect();
    let hits: Vec<Value> = report
        .rational_hits
        .iter()
        .map(|h| {
            json!({
                "theta": h.theta,
                "p": h.p,
                "q": h.q,
                "phi_q": h.phi_q,
                "bound": h.bound,
                "ok": h.ok,
            })
        })
        .collect();
    json!({
        "params": params,
        "generators": generators,
        "classes": classes,
        "records": records,
        "angle_set": angle_set,
        "rational_hits": hits,
    })
}

pub fn to_json_string(v: &Value) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedDigits(PrettyFormatter::with_indent(b"  ")));
    v.serialize(&mut ser).expect("writing to memory cannot fail");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

pub fn report_json(report: &SpectrumReport, group: &GeneratorSet, source: &str) -> String {
    to_json_string(&report_value(report, group, source))
}

pub const CSV_HEADER: &str = "class_i,class_j,conjugator,x,y,theta,cos2";

/// One row per record, in report order.
pub fn records_csv(report: &SpectrumReport, group: &GeneratorSet) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in &report.records {
        out.push_str(&format!(
            "{},{},{},{:.16e},{:.16e},{:.16e},{:.16e}\n",
            r.class_i,
            r.class_j,
            r.conjugator.display_with(group.names()),
            r.point.x,
            r.point.y,
            r.theta,
            r.cos2
        ));
    }
    out
}
