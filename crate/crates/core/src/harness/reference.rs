//! Published convergence tables for the `t^2 sin(2 pi x)` benchmark, every
//! cell, so verification needs nothing beyond this crate.

#![allow(clippy::excessive_precision)]

use crate::error::{Error, Result};

/// Which refinement a table studies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StudyKind {
    /// Mesh refinement at fixed `dt = 1/1000`, orders against `h`.
    Space,
    /// Time-step refinement at fixed `N = 200`, `k = 2`, orders against `dt`.
    Time,
}

/// The norm in the second error column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SecondNorm {
    Linf,
    L1,
}

/// One published row. `dt` is the requested step (before rounding to divide `T`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefRow {
    pub alpha: f64,
    pub degree: usize,
    pub cells: usize,
    pub dt: f64,
    pub l2: f64,
    pub l2_order: Option<f64>,
    pub second: f64,
    pub second_order: Option<f64>,
}

/// Acceptance band for one table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative tolerance on error cells.
    pub error_rel: f64,
    /// Absolute tolerance on order cells.
    pub order_abs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceTable {
    pub id: u8,
    pub kind: StudyKind,
    pub second: SecondNorm,
    pub rows: Vec<RefRow>,
    pub tolerances: Tolerances,
}

pub const SPACE_TOLERANCES: Tolerances = Tolerances { error_rel: 0.10, order_abs: 0.15 };
// The 0.03 row runs with dt_eff = 1/33, hence the wider band.
pub const TIME_TOLERANCES: Tolerances = Tolerances { error_rel: 0.20, order_abs: 0.30 };

/// Table `id` in `1..=5`.
pub fn reference_table(id: u8) -> Result<ReferenceTable> {
    let (kind, second, rows, tolerances) = match id {
        1 => (StudyKind::Space, SecondNorm::Linf, TABLE_1, SPACE_TOLERANCES),
        2 => (StudyKind::Space, SecondNorm::Linf, TABLE_2, SPACE_TOLERANCES),
        3 => (StudyKind::Space, SecondNorm::Linf, TABLE_3, SPACE_TOLERANCES),
        4 => (StudyKind::Space, SecondNorm::Linf, TABLE_4, SPACE_TOLERANCES),
        5 => (StudyKind::Time, SecondNorm::L1, TABLE_5, TIME_TOLERANCES),
        _ => return Err(Error::invalid(format!("unknown table {id}; expected 1..=5"))),
    };
    Ok(ReferenceTable { id, kind, second, rows: rows.to_vec(), tolerances })
}

impl ReferenceTable {
    /// Distinct fractional orders in row order.
    pub fn alphas(&self) -> Vec<f64> {
        let mut out: Vec<f64> = Vec::new();
        for r in &self.rows {
            if !out.contains(&r.alpha) {
                out.push(r.alpha);
            }
        }
        out
    }
}

#[rustfmt::skip]
const TABLE_1: &[RefRow] = &[
    RefRow { alpha: 1.2, degree: 0, cells: 5, dt: 0.001, l2: 0.265109983989909, l2_order: None, second: 0.623532065154133, second_order: None },
    RefRow { alpha: 1.2, degree: 0, cells: 10, dt: 0.001, l2: 0.129308265170869, l2_order: Some(1.03), second: 0.313595441923762, second_order: Some(0.98) },
    RefRow { alpha: 1.2, degree: 0, cells: 20, dt: 0.001, l2: 6.425848539792525e-2, l2_order: Some(1.01), second: 0.157010259108059, second_order: Some(1.00) },
    RefRow { alpha: 1.2, degree: 0, cells: 40, dt: 0.001, l2: 3.208010396964848e-2, l2_order: Some(1.00), second: 7.853125916762804e-2, second_order: Some(1.00) },
    RefRow { alpha: 1.2, degree: 0, cells: 80, dt: 0.001, l2: 1.603391954016398e-2, l2_order: Some(1.00), second: 3.926891940062052e-2, second_order: Some(1.00) },
    RefRow { alpha: 1.2, degree: 1, cells: 5, dt: 0.001, l2: 6.736979744152280e-2, l2_order: None, second: 0.249880240379731, second_order: None },
    RefRow { alpha: 1.2, degree: 1, cells: 10, dt: 0.001, l2: 1.695495641564284e-2, l2_order: Some(1.99), second: 6.468476942047330e-2, second_order: Some(1.95) },
    RefRow { alpha: 1.2, degree: 1, cells: 20, dt: 0.001, l2: 4.245128618901225e-3, l2_order: Some(2.00), second: 1.631233665625631e-2, second_order: Some(1.99) },
    RefRow { alpha: 1.2, degree: 1, cells: 40, dt: 0.001, l2: 1.061671545606701e-3, l2_order: Some(2.00), second: 4.103801542149732e-3, second_order: Some(1.99) },
    RefRow { alpha: 1.2, degree: 1, cells: 80, dt: 0.001, l2: 2.654420510184321e-4, l2_order: Some(2.00), second: 1.027598756713433e-3, second_order: Some(2.00) },
    RefRow { alpha: 1.2, degree: 2, cells: 5, dt: 0.001, l2: 6.682959934132981e-3, l2_order: None, second: 3.174066978350254e-2, second_order: None },
    RefRow { alpha: 1.2, degree: 2, cells: 10, dt: 0.001, l2: 8.506996364720942e-4, l2_order: Some(2.97), second: 3.971254358826398e-3, second_order: Some(3.00) },
    RefRow { alpha: 1.2, degree: 2, cells: 20, dt: 0.001, l2: 1.068204883018595e-4, l2_order: Some(2.99), second: 5.116352220441455e-4, second_order: Some(2.96) },
    RefRow { alpha: 1.2, degree: 2, cells: 40, dt: 0.001, l2: 1.336779544959365e-5, l2_order: Some(3.00), second: 6.443554411463790e-5, second_order: Some(2.99) },
    RefRow { alpha: 1.2, degree: 2, cells: 80, dt: 0.001, l2: 1.672333408099435e-6, l2_order: Some(3.00), second: 8.069512789853388e-6, second_order: Some(3.00) },
];

#[rustfmt::skip]
const TABLE_2: &[RefRow] = &[
    RefRow { alpha: 1.4, degree: 0, cells: 5, dt: 0.001, l2: 0.265002133818103, l2_order: None, second: 0.623263433950011, second_order: None },
    RefRow { alpha: 1.4, degree: 0, cells: 10, dt: 0.001, l2: 0.129296240434182, l2_order: Some(1.03), second: 0.313564577675057, second_order: Some(0.98) },
    RefRow { alpha: 1.4, degree: 0, cells: 20, dt: 0.001, l2: 6.425702562008787e-2, l2_order: Some(1.01), second: 0.157006484631294, second_order: Some(1.00) },
    RefRow { alpha: 1.4, degree: 0, cells: 40, dt: 0.001, l2: 3.207992382929516e-2, l2_order: Some(1.00), second: 7.853079254830535e-2, second_order: Some(1.00) },
    RefRow { alpha: 1.4, degree: 0, cells: 80, dt: 0.001, l2: 1.603389759999361e-2, l2_order: Some(1.00), second: 3.926886254925913e-2, second_order: Some(1.00) },
    RefRow { alpha: 1.4, degree: 1, cells: 5, dt: 0.001, l2: 6.736429618528465e-2, l2_order: None, second: 0.249848519443165, second_order: None },
    RefRow { alpha: 1.4, degree: 1, cells: 10, dt: 0.001, l2: 1.695467033281010e-2, l2_order: Some(1.99), second: 6.468306250704692e-2, second_order: Some(1.95) },
    RefRow { alpha: 1.4, degree: 1, cells: 20, dt: 0.001, l2: 4.245111564609582e-3, l2_order: Some(2.00), second: 1.631223051257358e-2, second_order: Some(1.99) },
    RefRow { alpha: 1.4, degree: 1, cells: 40, dt: 0.001, l2: 1.061670492069727e-3, l2_order: Some(2.00), second: 4.103794461966181e-3, second_order: Some(1.99) },
    RefRow { alpha: 1.4, degree: 1, cells: 80, dt: 0.001, l2: 2.654419852360282e-4, l2_order: Some(2.00), second: 1.027597816101400e-3, second_order: Some(2.00) },
    RefRow { alpha: 1.4, degree: 2, cells: 5, dt: 0.001, l2: 6.682553306760190e-3, l2_order: None, second: 3.173870305522863e-2, second_order: None },
    RefRow { alpha: 1.4, degree: 2, cells: 10, dt: 0.001, l2: 8.506873719172307e-4, l2_order: Some(2.97), second: 3.971185742546351e-3, second_order: Some(3.00) },
    RefRow { alpha: 1.4, degree: 2, cells: 20, dt: 0.001, l2: 1.068201082305646e-4, l2_order: Some(2.99), second: 5.116330685330400e-4, second_order: Some(2.96) },
    RefRow { alpha: 1.4, degree: 2, cells: 40, dt: 0.001, l2: 1.336778230870020e-5, l2_order: Some(3.00), second: 6.443547673697195e-5, second_order: Some(2.99) },
    RefRow { alpha: 1.4, degree: 2, cells: 80, dt: 0.001, l2: 1.672322693664752e-6, l2_order: Some(3.00), second: 8.069510669296185e-6, second_order: Some(3.00) },
];

#[rustfmt::skip]
const TABLE_3: &[RefRow] = &[
    RefRow { alpha: 1.6, degree: 0, cells: 5, dt: 0.001, l2: 0.264972688983567, l2_order: None, second: 0.623189941325662, second_order: None },
    RefRow { alpha: 1.6, degree: 0, cells: 10, dt: 0.001, l2: 0.129291634839670, l2_order: Some(1.03), second: 0.313552730827037, second_order: Some(0.98) },
    RefRow { alpha: 1.6, degree: 0, cells: 20, dt: 0.001, l2: 6.425644681449535e-2, l2_order: Some(1.01), second: 0.157004984816329, second_order: Some(1.00) },
    RefRow { alpha: 1.6, degree: 0, cells: 40, dt: 0.001, l2: 3.207985524403432e-2, l2_order: Some(1.00), second: 7.853061451680375e-2, second_order: Some(1.00) },
    RefRow { alpha: 1.6, degree: 0, cells: 80, dt: 0.001, l2: 1.603389101024813e-2, l2_order: Some(1.00), second: 3.926884544112283e-2, second_order: Some(1.00) },
    RefRow { alpha: 1.6, degree: 1, cells: 5, dt: 0.001, l2: 6.736317907360344e-2, l2_order: None, second: 0.249838735643862, second_order: None },
    RefRow { alpha: 1.6, degree: 1, cells: 10, dt: 0.001, l2: 1.695461845352325e-2, l2_order: Some(1.99), second: 6.468254410369267e-2, second_order: Some(1.95) },
    RefRow { alpha: 1.6, degree: 1, cells: 20, dt: 0.001, l2: 4.245108546494545e-3, l2_order: Some(2.00), second: 1.631218386012478e-2, second_order: Some(1.99) },
    RefRow { alpha: 1.6, degree: 1, cells: 40, dt: 0.001, l2: 1.061670300965039e-3, l2_order: Some(2.00), second: 4.103777047141932e-3, second_order: Some(1.99) },
    RefRow { alpha: 1.6, degree: 1, cells: 80, dt: 0.001, l2: 2.654419703069185e-4, l2_order: Some(2.00), second: 1.027582241539760e-3, second_order: Some(2.00) },
    RefRow { alpha: 1.6, degree: 2, cells: 5, dt: 0.001, l2: 6.682478515070153e-3, l2_order: None, second: 3.173831828892504e-2, second_order: None },
    RefRow { alpha: 1.6, degree: 2, cells: 10, dt: 0.001, l2: 8.506852141270998e-4, l2_order: Some(2.97), second: 3.971173620498153e-3, second_order: Some(3.00) },
    RefRow { alpha: 1.6, degree: 2, cells: 20, dt: 0.001, l2: 1.068200376865845e-4, l2_order: Some(2.99), second: 5.116326863045966e-4, second_order: Some(2.96) },
    RefRow { alpha: 1.6, degree: 2, cells: 40, dt: 0.001, l2: 1.336774817234452e-5, l2_order: Some(3.00), second: 6.443546414282400e-5, second_order: Some(2.99) },
    RefRow { alpha: 1.6, degree: 2, cells: 80, dt: 0.001, l2: 1.672066664180233e-6, l2_order: Some(3.00), second: 8.069510170348080e-6, second_order: Some(3.00) },
];

#[rustfmt::skip]
const TABLE_4: &[RefRow] = &[
    RefRow { alpha: 1.8, degree: 0, cells: 5, dt: 0.001, l2: 0.265395156138938, l2_order: None, second: 0.624238212597400, second_order: None },
    RefRow { alpha: 1.8, degree: 0, cells: 10, dt: 0.001, l2: 0.129328509614864, l2_order: Some(1.03), second: 0.313647188207608, second_order: Some(0.98) },
    RefRow { alpha: 1.8, degree: 0, cells: 20, dt: 0.001, l2: 6.426055758264328e-2, l2_order: Some(1.01), second: 0.157015597179358, second_order: Some(1.00) },
    RefRow { alpha: 1.8, degree: 0, cells: 40, dt: 0.001, l2: 3.208037034587025e-2, l2_order: Some(1.00), second: 7.853194655385835e-2, second_order: Some(1.00) },
    RefRow { alpha: 1.8, degree: 0, cells: 80, dt: 0.001, l2: 1.603396389418712e-2, l2_order: Some(1.00), second: 3.926903380844882e-2, second_order: Some(1.00) },
    RefRow { alpha: 1.8, degree: 1, cells: 5, dt: 0.001, l2: 6.736868534645306e-2, l2_order: None, second: 0.249898961167015, second_order: None },
    RefRow { alpha: 1.8, degree: 1, cells: 10, dt: 0.001, l2: 1.695486972560303e-2, l2_order: Some(1.99), second: 6.468562726677418e-2, second_order: Some(1.95) },
    RefRow { alpha: 1.8, degree: 1, cells: 20, dt: 0.001, l2: 4.245123063266223e-3, l2_order: Some(2.00), second: 1.631242414011957e-2, second_order: Some(1.99) },
    RefRow { alpha: 1.8, degree: 1, cells: 40, dt: 0.001, l2: 1.061671210932901e-3, l2_order: Some(2.00), second: 4.103841431837951e-3, second_order: Some(1.99) },
    RefRow { alpha: 1.8, degree: 1, cells: 80, dt: 0.001, l2: 2.654420391246725e-4, l2_order: Some(2.00), second: 1.027635651727810e-3, second_order: Some(2.00) },
    RefRow { alpha: 1.8, degree: 2, cells: 5, dt: 0.001, l2: 6.682807553983295e-3, l2_order: None, second: 3.174004623627680e-2, second_order: None },
    RefRow { alpha: 1.8, degree: 2, cells: 10, dt: 0.001, l2: 8.506954178648776e-4, l2_order: Some(2.97), second: 3.971230808741821e-3, second_order: Some(3.00) },
    RefRow { alpha: 1.8, degree: 2, cells: 20, dt: 0.001, l2: 1.068203742828856e-4, l2_order: Some(2.99), second: 5.116345075529710e-4, second_order: Some(2.96) },
    RefRow { alpha: 1.8, degree: 2, cells: 40, dt: 0.001, l2: 1.336790404833714e-5, l2_order: Some(3.00), second: 6.443552350912754e-5, second_order: Some(2.99) },
    RefRow { alpha: 1.8, degree: 2, cells: 80, dt: 0.001, l2: 1.673232029466757e-6, l2_order: Some(3.00), second: 8.070278651961527e-6, second_order: Some(3.00) },
];

#[rustfmt::skip]
const TABLE_5: &[RefRow] = &[
    RefRow { alpha: 1.1, degree: 2, cells: 200, dt: 0.05, l2: 2.315895458864733e-6, l2_order: None, second: 2.078028449959208e-6, second_order: None },
    RefRow { alpha: 1.1, degree: 2, cells: 200, dt: 0.04, l2: 1.452896981500066e-6, l2_order: Some(2.09), second: 1.301714631618507e-6, second_order: Some(2.10) },
    RefRow { alpha: 1.1, degree: 2, cells: 200, dt: 0.03, l2: 8.051939547113251e-7, l2_order: Some(2.05), second: 7.198086134684791e-7, second_order: Some(2.06) },
    RefRow { alpha: 1.1, degree: 2, cells: 200, dt: 0.02, l2: 3.394311162501219e-7, l2_order: Some(2.13), second: 3.023980936139506e-7, second_order: Some(2.14) },
    RefRow { alpha: 1.8, degree: 2, cells: 200, dt: 0.05, l2: 1.550654829179151e-4, l2_order: None, second: 1.396164504933172e-4, second_order: None },
    RefRow { alpha: 1.8, degree: 2, cells: 200, dt: 0.04, l2: 9.400505980906901e-5, l2_order: Some(2.24), second: 8.464278635512412e-5, second_order: Some(2.24) },
    RefRow { alpha: 1.8, degree: 2, cells: 200, dt: 0.03, l2: 5.271466986243190e-5, l2_order: Some(2.01), second: 4.746819651138549e-5, second_order: Some(2.01) },
    RefRow { alpha: 1.8, degree: 2, cells: 200, dt: 0.02, l2: 2.314548304581403e-5, l2_order: Some(2.03), second: 2.101160952907237e-5, second_order: Some(2.01) },
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        for id in 1..=4 {
            let t = reference_table(id).unwrap();
            assert_eq!(t.rows.len(), 15);
            assert_eq!(t.rows.iter().filter(|r| r.l2_order.is_none()).count(), 3);
            assert_eq!(t.alphas().len(), 1);
        }
        let t5 = reference_table(5).unwrap();
        assert_eq!(t5.rows.len(), 8);
        assert_eq!(t5.alphas(), vec![1.1, 1.8]);
        assert!(reference_table(0).is_err());
        assert!(reference_table(6).is_err());
    }

    #[test]
    fn spot_values() {
        let t1 = reference_table(1).unwrap();
        assert_eq!(t1.rows[14].l2, 1.672333408099435e-6);
        assert_eq!(t1.rows[8].l2, 1.061671545606701e-3);
        let t5 = reference_table(5).unwrap();
        assert_eq!(t5.rows[7].l2, 2.314548304581403e-5);
        assert_eq!(t5.rows[3].l2_order, Some(2.13));
    }
}
