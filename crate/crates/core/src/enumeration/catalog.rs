use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{is_minus_one_class, orientation_violation, ClassKind};
use crate::error::{Error, Result};
use crate::lattice::DivisorClass;

/// Version tag of the on-disk catalog layout and coordinate convention.
pub const CATALOG_FORMAT_VERSION: &str = "blowup-cones-catalog/1 (d;m) = dL - sum m_i E_i";

/// A sorted, duplicate-free list of classes of one kind up to a degree bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassCatalog {
    r: usize,
    max_degree: u32,
    kind: ClassKind,
    classes: Vec<DivisorClass>,
    convention_version: String,
}

impl ClassCatalog {
    /// Builds a catalog from arbitrary input: sorts, removes duplicates and
    /// validates every class against the kind and orientation rules.
    pub fn new(
        r: usize,
        max_degree: u32,
        kind: ClassKind,
        mut classes: Vec<DivisorClass>,
    ) -> Result<Self> {
        classes.sort_unstable();
        classes.dedup();
        for c in &classes {
            if let Some(reason) = record_violation(r, max_degree, kind, c) {
                return Err(Error::Kind {
                    class: c.to_string(),
                    kind: kind.to_string(),
                    reason,
                });
            }
        }
        Ok(Self::from_sorted_unchecked(r, max_degree, kind, classes))
    }

    pub(crate) fn from_sorted_unchecked(
        r: usize,
        max_degree: u32,
        kind: ClassKind,
        classes: Vec<DivisorClass>,
    ) -> Self {
        debug_assert!(classes.windows(2).all(|w| w[0] < w[1]));
        Self {
            r,
            max_degree,
            kind,
            classes,
            convention_version: CATALOG_FORMAT_VERSION.to_string(),
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn kind(&self) -> ClassKind {
        self.kind
    }

    pub fn classes(&self) -> &[DivisorClass] {
        &self.classes
    }

    pub fn convention_version(&self) -> &str {
        &self.convention_version
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, DivisorClass> {
        self.classes.iter()
    }

    pub fn contains(&self, c: &DivisorClass) -> bool {
        self.classes.binary_search(c).is_ok()
    }

    /// Classes of degree exactly `d`.
    pub fn of_degree(&self, d: u32) -> &[DivisorClass] {
        let d = BigInt::from(d);
        let lo = self.classes.partition_point(|c| c.d() < &d);
        let hi = self.classes.partition_point(|c| c.d() <= &d);
        &self.classes[lo..hi]
    }

    /// The sub-catalog of classes satisfying `keep`.
    pub fn filtered(&self, mut keep: impl FnMut(&DivisorClass) -> bool) -> Self {
        Self {
            classes: self.classes.iter().filter(|c| keep(c)).cloned().collect(),
            ..self.clone()
        }
    }
}

impl<'a> IntoIterator for &'a ClassCatalog {
    type Item = &'a DivisorClass;
    type IntoIter = std::slice::Iter<'a, DivisorClass>;

    fn into_iter(self) -> Self::IntoIter {
        self.classes.iter()
    }
}

fn record_violation(
    r: usize,
    max_degree: u32,
    kind: ClassKind,
    c: &DivisorClass,
) -> Option<String> {
    if c.r() != r {
        return Some(format!(
            "class has {} multiplicities, catalog has r = {r}",
            c.r()
        ));
    }
    if c.d() > &BigInt::from(max_degree) {
        return Some(format!("degree {} exceeds max_degree {max_degree}", c.d()));
    }
    if let Some(v) = kind.violation(c) {
        return Some(v);
    }
    if let Some(v) = orientation_violation(kind, c) {
        return Some(v);
    }
    if !c.is_primitive() {
        return Some("class is not primitive".into());
    }
    if kind == ClassKind::MinusOne && !is_minus_one_class(c) {
        return Some("does not reduce to an exceptional class under quadratic transforms".into());
    }
    None
}

#[derive(Serialize, Deserialize, Debug)]
struct Header {
    format_version: String,
    r: usize,
    max_degree: u32,
    kind: String,
    count: usize,
}

/// Writes the catalog: a JSON header object on the first line, then one JSON
/// string `"d;m1,...,mr"` per class. Lines end in `\n`.
pub fn write_catalog<W: Write>(catalog: &ClassCatalog, mut out: W) -> Result<()> {
    let header = Header {
        format_version: catalog.convention_version.clone(),
        r: catalog.r,
        max_degree: catalog.max_degree,
        kind: catalog.kind.to_string(),
        count: catalog.len(),
    };
    let header = serde_json::to_string(&header).expect("header serializes");
    writeln!(out, "{header}")?;
    for c in &catalog.classes {
        writeln!(out, "\"{c}\"")?;
    }
    out.flush()?;
    Ok(())
}

pub fn save_catalog(catalog: &ClassCatalog, path: impl AsRef<Path>) -> Result<()> {
    let file = File::create(path)?;
    write_catalog(catalog, BufWriter::new(file))
}

pub fn load_catalog(path: impl AsRef<Path>) -> Result<ClassCatalog> {
    let path = path.as_ref();
    let file = File::open(path)?;
    read_catalog(BufReader::new(file), path)
}

/// Parses and re-validates a catalog; `origin` only labels error messages.
pub fn read_catalog<R: BufRead>(input: R, origin: impl AsRef<Path>) -> Result<ClassCatalog> {
    let origin: PathBuf = origin.as_ref().to_path_buf();
    let fail = |line: usize, record: &str, reason: String| Error::Catalog {
        path: origin.clone(),
        line,
        record: record.to_string(),
        reason,
    };
    let mut lines = input.lines();
    let first = match lines.next() {
        Some(l) => l?,
        None => return Err(fail(1, "", "missing header line".into())),
    };
    let header: Header = serde_json::from_str(&first)
        .map_err(|e| fail(1, &first, format!("corrupt header: {e}")))?;
    if header.format_version != CATALOG_FORMAT_VERSION {
        return Err(fail(
            1,
            &first,
            format!(
                "format version {:?} does not match {CATALOG_FORMAT_VERSION:?}",
                header.format_version
            ),
        ));
    }
    let kind: ClassKind = header
        .kind
        .parse()
        .map_err(|e: Error| fail(1, &first, e.to_string()))?;

    let mut classes: Vec<DivisorClass> = Vec::with_capacity(header.count);
    let mut last_line = 1;
    for (idx, line) in lines.enumerate() {
        let lineno = idx + 2;
        last_line = lineno;
        let line = line?;
        let text = if line.starts_with('"') {
            serde_json::from_str::<String>(&line)
                .map_err(|e| fail(lineno, &line, format!("corrupt record: {e}")))?
        } else {
            line.clone()
        };
        let c: DivisorClass = text
            .parse()
            .map_err(|e: Error| fail(lineno, &line, e.to_string()))?;
        if let Some(reason) = record_violation(header.r, header.max_degree, kind, &c) {
            return Err(fail(lineno, &line, reason));
        }
        if let Some(prev) = classes.last() {
            if prev >= &c {
                let reason = if prev == &c {
                    "duplicate class"
                } else {
                    "records out of catalog order"
                };
                return Err(fail(lineno, &line, reason.into()));
            }
        }
        classes.push(c);
    }
    if classes.len() != header.count {
        return Err(fail(
            last_line,
            "",
            format!(
                "header announces {} classes, found {}",
                header.count,
                classes.len()
            ),
        ));
    }
    Ok(ClassCatalog::from_sorted_unchecked(
        header.r,
        header.max_degree,
        kind,
        classes,
    ))
}
