//! Report envelope, JSON/CSV rendering, and atomic file output.

use std::io::{self, Write};
use std::path::Path;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

/// Schema version stamped on every JSON report.
pub const SCHEMA_VERSION: u32 = 1;

/// Provenance block. Carries the only nondeterministic bytes in a report;
/// determinism comparisons look at `payload` alone.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Metadata {
    pub generated_at: String,
    pub tool: String,
}

/// Standard wrapper around every JSON payload.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema_version: u32,
    pub metadata: Metadata,
    pub payload: T,
}

impl<T> Envelope<T> {
    pub fn new(payload: T) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            metadata: Metadata {
                generated_at: chrono::Utc::now()
                    .to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
                tool: concat!("cocirc ", env!("CARGO_PKG_VERSION")).to_owned(),
            },
            payload,
        }
    }
}

/// Fixed rendering for every floating-point value in a report: scientific
/// notation with 17 significant digits, enough to reproduce any 64-bit value
/// exactly, so parse-then-serialize round trips are byte identical.
pub fn float_field(value: f64) -> String {
    format!("{value:.16e}")
}

/// Serializes a report as pretty JSON with [`float_field`] float rendering
/// and a trailing newline.
pub fn to_json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    let mut serializer = serde_json::Serializer::with_formatter(&mut out, SciPretty::new());
    value
        .serialize(&mut serializer)
        .context("serializing the report")?;
    out.push(b'\n');
    Ok(out)
}

/// Pretty-printing JSON formatter that renders every `f64` in scientific
/// notation with 17 significant digits. Everything except floats delegates
/// to the stock pretty formatter.
pub struct SciPretty<'a> {
    inner: serde_json::ser::PrettyFormatter<'a>,
}

impl SciPretty<'_> {
    pub fn new() -> Self {
        Self {
            inner: serde_json::ser::PrettyFormatter::new(),
        }
    }
}

impl serde_json::ser::Formatter for SciPretty<'_> {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            writer.write_all(b"null")
        }
    }

    fn begin_array<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.begin_array(writer)
    }

    fn end_array<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.end_array(writer)
    }

    fn begin_array_value<W>(&mut self, writer: &mut W, first: bool) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.begin_array_value(writer, first)
    }

    fn end_array_value<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.end_array_value(writer)
    }

    fn begin_object<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.begin_object(writer)
    }

    fn end_object<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.end_object(writer)
    }

    fn begin_object_key<W>(&mut self, writer: &mut W, first: bool) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.begin_object_key(writer, first)
    }

    fn begin_object_value<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.begin_object_value(writer)
    }

    fn end_object_value<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.end_object_value(writer)
    }
}

/// Quotes a CSV field only when it needs quoting.
pub fn csv_field(field: &str) -> String {
    if field.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_owned()
    }
}

/// Writes report bytes to the given path atomically (write to a temporary
/// file in the same directory, then rename), or to stdout when no path is
/// given.
pub fn write_output(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    let Some(path) = path else {
        io::stdout()
            .write_all(bytes)
            .context("writing the report to stdout")?;
        return Ok(());
    };
    let parent = match path.parent() {
        Some(dir) if !dir.as_os_str().is_empty() => dir,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(parent)
        .with_context(|| format!("creating a temporary file in {}", parent.display()))?;
    tmp.write_all(bytes).context("writing the report")?;
    tmp.persist(path)
        .with_context(|| format!("moving the report into place at {}", path.display()))?;
    Ok(())
}
