use serde::Serialize;

use crate::N_FEATURES;

pub const FAMILY_HISTORY_INDEX: usize = 10;
pub const AGE_INDEX: usize = 33;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AttributeKind {
    /// Severity grade 0..=3.
    Graded,
    /// 0 or 1.
    Binary,
    /// Patient age in years; the only attribute that may be missing.
    Age,
}

impl AttributeKind {
    pub fn accepts(self, value: u32) -> bool {
        match self {
            AttributeKind::Graded => value <= 3,
            AttributeKind::Binary => value <= 1,
            AttributeKind::Age => value <= 150,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AttributeSpec {
    pub index: usize,
    pub name: &'static str,
    pub kind: AttributeKind,
}

const NAMES: [&str; N_FEATURES] = [
    "erythema",
    "scaling",
    "definite borders",
    "itching",
    "koebner phenomenon",
    "polygonal papules",
    "follicular papules",
    "oral mucosal involvement",
    "knee and elbow involvement",
    "scalp involvement",
    "family history",
    "melanin incontinence",
    "eosinophils in the infiltrate",
    "PNL infiltrate",
    "fibrosis of the papillary dermis",
    "exocytosis",
    "acanthosis",
    "hyperkeratosis",
    "parakeratosis",
    "clubbing of the rete ridges",
    "elongation of the rete ridges",
    "thinning of the suprapapillary epidermis",
    "spongiform pustule",
    "munro microabcess",
    "focal hypergranulosis",
    "disappearance of the granular layer",
    "vacuolisation and damage of basal layer",
    "spongiosis",
    "saw-tooth appearance of retes",
    "follicular horn plug",
    "perifollicular parakeratosis",
    "inflammatory mononuclear infiltrate",
    "band-like infiltrate",
    "age",
];

/// Diagnosis names for class labels 1..=6.
pub const CLASS_NAMES: [&str; 6] = [
    "psoriasis",
    "seboric dermatitis",
    "lichen planus",
    "pityriasis rosea",
    "chronic dermatitis",
    "pityriasis rubra pilaris",
];

/// The 34 attribute descriptors in file order.
pub fn esd_schema() -> Vec<AttributeSpec> {
    NAMES
        .iter()
        .enumerate()
        .map(|(index, &name)| AttributeSpec {
            index,
            name,
            kind: match index {
                FAMILY_HISTORY_INDEX => AttributeKind::Binary,
                AGE_INDEX => AttributeKind::Age,
                _ => AttributeKind::Graded,
            },
        })
        .collect()
}
