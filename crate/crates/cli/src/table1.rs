use coprime_compositions::ConstantKind;

/// A published 5-decimal value of `C_k` or `D_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableEntry {
    pub kind: ConstantKind,
    pub k: u32,
    pub value: &'static str,
}

const fn entry(kind: ConstantKind, k: u32, value: &'static str) -> TableEntry {
    TableEntry { kind, k, value }
}

pub const TABLE1: [TableEntry; 11] = [
    entry(ConstantKind::C, 2, "0.32263"),
    entry(ConstantKind::C, 3, "0.38159"),
    entry(ConstantKind::C, 4, "0.26778"),
    entry(ConstantKind::C, 5, "0.26328"),
    entry(ConstantKind::C, 6, "0.23051"),
    entry(ConstantKind::C, 7, "0.22123"),
    entry(ConstantKind::D, 3, "0.12548"),
    entry(ConstantKind::D, 4, "0.19680"),
    entry(ConstantKind::D, 5, "0.01312"),
    entry(ConstantKind::D, 6, "0.02330"),
    entry(ConstantKind::D, 7, "0.00099"),
];

/// Widest enclosure accepted for a table entry.
pub const MAX_WIDTH: f64 = 2e-5;

/// Half-width of the set of reals that round to a 5-decimal entry.
const HALF_UNIT: &str = "0.000005";

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct TableCheck {
    pub kind: ConstantKind,
    pub k: u32,
    pub entry: &'static str,
    pub lo: String,
    pub hi: String,
    pub width: String,
    #[serde(rename = "cutoff_P")]
    pub cutoff_p: u64,
    pub pass: bool,
}

/// Encloses the constant behind `entry` and checks that the enclosure is
/// narrow enough and meets the interval of values rounding to the entry.
pub fn check_entry(entry: &TableEntry, width: f64, max_cutoff: u64) -> coprime_compositions::Result<TableCheck> {
    use coprime_compositions::constants::euler_constant;
    use coprime_compositions::{Fixed, Rounding};

    let enc = euler_constant(entry.kind, entry.k, width, max_cutoff)?;
    let half = Fixed::parse_decimal(HALF_UNIT, Rounding::Up).expect("literal");
    let value = Fixed::parse_decimal(entry.value, Rounding::Down).expect("literal");
    let value_hi = Fixed::parse_decimal(entry.value, Rounding::Up).expect("literal");
    let meets = enc.meets(&value.sub(&half), &value_hi.add(&half));
    let record = enc.record();
    Ok(TableCheck {
        kind: entry.kind,
        k: entry.k,
        entry: entry.value,
        lo: record.lo,
        hi: record.hi,
        width: record.width,
        cutoff_p: record.cutoff_p,
        pass: meets && enc.width_f64() <= MAX_WIDTH,
    })
}
