use std::fmt::Write as _;
use std::path::Path;

use log::warn;

use super::schema::{esd_schema, AttributeKind, AttributeSpec, AGE_INDEX};
use crate::error::{Error, Result};
use crate::{N_CLASSES, N_FEATURES};

/// One patient record. `None` marks a missing value (`?` in the file), which
/// only the age attribute may carry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub features: Vec<Option<u32>>,
    /// Diagnosis, 1..=6.
    pub class_label: u8,
}

impl Instance {
    pub fn age(&self) -> Option<u32> {
        self.features[AGE_INDEX]
    }

    /// Zero-based class index.
    pub fn class_index(&self) -> usize {
        usize::from(self.class_label - 1)
    }

    fn write_record(&self, out: &mut String) {
        for value in &self.features {
            match value {
                Some(v) => write!(out, "{v},").unwrap(),
                None => out.push_str("?,"),
            }
        }
        writeln!(out, "{}", self.class_label).unwrap();
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Provenance {
    pub source: String,
    pub dropped_missing_age: bool,
    pub dropped: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub schema: Vec<AttributeSpec>,
    pub instances: Vec<Instance>,
    pub provenance: Provenance,
}

impl Dataset {
    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }

    /// Zero-based class index of every instance, in file order.
    pub fn labels(&self) -> Vec<usize> {
        self.instances.iter().map(Instance::class_index).collect()
    }

    pub fn class_counts(&self) -> [usize; N_CLASSES] {
        let mut counts = [0; N_CLASSES];
        for inst in &self.instances {
            counts[inst.class_index()] += 1;
        }
        counts
    }

    pub fn missing_age_count(&self) -> usize {
        self.instances.iter().filter(|i| i.age().is_none()).count()
    }

    /// Writes the instances back in the comma-separated input format.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.instances.len() * 80);
        for inst in &self.instances {
            inst.write_record(&mut out);
        }
        out
    }
}

fn parse_error(line: usize, field: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        field,
        message: message.into(),
    }
}

/// Parses one 35-field record. `line_no` is only used for error messages.
pub fn parse_record(line: &str, schema: &[AttributeSpec], line_no: usize) -> Result<Instance> {
    let fields: Vec<&str> = line.trim().split(',').map(str::trim).collect();
    if fields.len() != schema.len() + 1 {
        return Err(parse_error(
            line_no,
            fields.len(),
            format!(
                "expected {} fields, found {}",
                schema.len() + 1,
                fields.len()
            ),
        ));
    }

    let mut features = Vec::with_capacity(schema.len());
    for (spec, raw) in schema.iter().zip(&fields) {
        let field = spec.index + 1;
        if *raw == "?" {
            if spec.kind != AttributeKind::Age {
                return Err(parse_error(
                    line_no,
                    field,
                    format!("missing value not allowed for '{}'", spec.name),
                ));
            }
            features.push(None);
            continue;
        }
        let value: u32 = raw
            .parse()
            .map_err(|_| parse_error(line_no, field, format!("'{raw}' is not an integer")))?;
        if !spec.kind.accepts(value) {
            return Err(parse_error(
                line_no,
                field,
                format!("value {value} out of range for '{}'", spec.name),
            ));
        }
        features.push(Some(value));
    }

    let class_field = schema.len() + 1;
    let raw = fields[schema.len()];
    let class_label: u8 = raw.parse().map_err(|_| {
        parse_error(
            line_no,
            class_field,
            format!("class '{raw}' is not an integer"),
        )
    })?;
    if !(1..=N_CLASSES as u8).contains(&class_label) {
        return Err(parse_error(
            line_no,
            class_field,
            format!("class {class_label} outside 1..={N_CLASSES}"),
        ));
    }

    Ok(Instance {
        features,
        class_label,
    })
}

/// Parses the whole file contents. Blank lines are ignored.
pub fn parse_dataset(text: &str, source: &str) -> Result<Dataset> {
    let schema = esd_schema();
    debug_assert_eq!(schema.len(), N_FEATURES);
    let mut instances = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        instances.push(parse_record(line, &schema, i + 1)?);
    }
    if instances.is_empty() {
        return Err(Error::NoInstances);
    }
    Ok(Dataset {
        schema,
        instances,
        provenance: Provenance {
            source: source.to_string(),
            ..Provenance::default()
        },
    })
}

pub fn load_dataset(path: impl AsRef<Path>) -> Result<Dataset> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_dataset(&text, &path.display().to_string())
}

/// Keeps only the instances whose age is present, in their original order.
pub fn drop_missing_age(dataset: &Dataset) -> Dataset {
    let instances: Vec<Instance> = dataset
        .instances
        .iter()
        .filter(|i| i.age().is_some())
        .cloned()
        .collect();
    let removed = dataset.len() - instances.len();
    if instances.is_empty() && !dataset.is_empty() {
        warn!("every instance lacks an age value; the cleaned dataset is empty");
    }
    Dataset {
        schema: dataset.schema.clone(),
        instances,
        provenance: Provenance {
            source: dataset.provenance.source.clone(),
            dropped_missing_age: true,
            dropped: dataset.provenance.dropped + removed,
        },
    }
}
