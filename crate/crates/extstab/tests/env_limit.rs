//! The dense-simulation qubit caps honor the `EXTSTAB_DENSE_LIMIT` override.
//! Kept in its own test binary because the variable is process-global.

use extstab::oracle;
use extstab::pauli::InitBasis;

#[test]
fn env_var_overrides_dense_limits() {
    assert_eq!(oracle::vector_limit(), 12);
    assert_eq!(oracle::density_limit(), 9);
    // 13 qubits is over the default vector cap...
    let inits = vec![InitBasis::Zero; 13];
    assert!(oracle::DenseState::from_inits(&inits, false).is_err());

    std::env::set_var("EXTSTAB_DENSE_LIMIT", "14");
    assert_eq!(oracle::vector_limit(), 14);
    assert_eq!(oracle::density_limit(), 14);
    // ...but fine once the cap is raised.
    assert!(oracle::DenseState::from_inits(&inits, false).is_ok());

    std::env::set_var("EXTSTAB_DENSE_LIMIT", "4");
    let inits = vec![InitBasis::Zero; 5];
    assert!(oracle::DenseState::from_inits(&inits, false).is_err());
    std::env::remove_var("EXTSTAB_DENSE_LIMIT");
}
