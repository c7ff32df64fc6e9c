//! Catalogue of word identities on `X⁶` that follow from the tetrahedron equation.

use super::word::SlotMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expectation {
    /// Must hold whenever the tetrahedron equation holds.
    Holds,
    /// Alternative reading of a display; the verdict is reported, not required.
    Reported,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedIdentity {
    pub name: &'static str,
    pub lhs: SlotMap,
    pub rhs: SlotMap,
    pub expectation: Expectation,
}

fn id(name: &'static str, lhs: &str, rhs: &str, expectation: Expectation) -> NamedIdentity {
    NamedIdentity {
        name,
        lhs: SlotMap::parse(6, lhs).expect("static word"),
        rhs: SlotMap::parse(6, rhs).expect("static word"),
        expectation,
    }
}

/// Identities between set maps.
pub fn set_identities() -> Vec<NamedIdentity> {
    use Expectation::*;
    vec![
        id("tetrahedron", "F_123 F_145 F_246 F_356", "F_356 F_246 F_145 F_123", Holds),
        id("tetrahedron-conjugate", "Fi_356 F_123 F_145 F_246", "F_246 F_145 F_123 Fi_356", Holds),
        id(
            "flip-356-inverse-form",
            "F^t12_123' F^t14_145' F^t24_246' F_356",
            "F_356 F^t24_246' F^t14_145' F^t12_123'",
            Holds,
        ),
        id("flip-356", "F^t3_123 F^t5_145 F^t6_246 F_356", "F_356 F^t6_246 F^t5_145 F^t3_123", Holds),
        id(
            "flip-356-t4-reading",
            "F^t3_123 F^t5_145 F^t6_246 F_356",
            "F_356 F^t6_246 F^t4_145 F^t3_123",
            Reported,
        ),
        id("flip-135-start", "F_145 F_123 Fi_356 Fi_246", "Fi_246 Fi_356 F_123 F_145", Holds),
        id(
            "flip-135-inverted",
            "F_246 F^t4_145 F^t2_123 F^t35_356",
            "F^t35_356 F^t2_123 F^t4_145 F_246",
            Holds,
        ),
        id("flip-135", "F^t6_356 F_246 F^t4_145 F^t2_123", "F^t2_123 F^t4_145 F_246 F^t6_356", Holds),
        id("order-145-246-relabelled", "F_145 F_246 F_213 Fi_365", "Fi_365 F_213 F_246 F_145", Holds),
        id(
            "order-145-246-inverted",
            "F_145 F_246 F^t56_365 F^t3_213",
            "F^t3_213 F^t56_365 F_246 F_145",
            Holds,
        ),
        id(
            "order-145-246",
            "F^t3_213' F_145 F_246 F^t3_365'",
            "F^t3_365' F_246 F_145 F^t3_213'",
            Holds,
        ),
    ]
}

/// Identities between monomial operators `A`, `A⁻¹` and their transposes.
pub fn operator_identities() -> Vec<NamedIdentity> {
    use Expectation::*;
    vec![
        id("tetrahedron", "A_123 A_145 A_246 A_356", "A_356 A_246 A_145 A_123", Holds),
        id(
            "flip-356-inverse-form",
            "A^t12_123' A^t14_145' A^t24_246' A_356",
            "A_356 A^t24_246' A^t14_145' A^t12_123'",
            Holds,
        ),
        id(
            "flip-356",
            "A_356 A^t12_123 A^t14_145 A^t24_246",
            "A^t24_246 A^t14_145 A^t12_123 A_356",
            Holds,
        ),
        id(
            "flip-356-step-t4",
            "A_356 A^t12_123 A^t2_246 A^t1_145",
            "A^t1_145 A^t2_246 A^t12_123 A_356",
            Holds,
        ),
        id(
            "flip-356-step-t2",
            "A_356 A_246 A^t1_123 A^t1_145",
            "A^t1_145 A^t1_123 A_246 A_356",
            Holds,
        ),
        id("flip-356-step-t1", "A_356 A_246 A_145 A_123", "A_123 A_145 A_246 A_356", Holds),
        id(
            "flip-246-inverse-form",
            "A^t13_123' A^t15_145' A_246 A^t35_356'",
            "A^t35_356' A_246 A^t15_145' A^t13_123'",
            Holds,
        ),
        id(
            "flip-246-conjugated",
            "Ai_246 A^t15_145 A^t13_123 A^t35_356'",
            "A^t35_356' A^t13_123 A^t15_145 Ai_246",
            Holds,
        ),
        id(
            "flip-246-final",
            "Ai_246 Ai_356 A_123 A_145",
            "A_145 A_123 Ai_356 Ai_246",
            Holds,
        ),
    ]
}
