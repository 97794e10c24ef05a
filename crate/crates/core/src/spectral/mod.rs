//! The spectral correspondence on a chart of the line: Higgs matrices over `k[t]` and rank-1
//! modules over `S = k[t][x]/(P)`, the exact sequence relating them, and the checks for
//! SL, Sp and GSp spectral data.

mod bnr;
mod conjugacy;
mod formulas;
mod higgs;
mod module;
mod structure;

pub use bnr::{
    bnr_matrices, bnr_q_coords, bnr_q_map, closed_points, verify_bnr_sequence, BnrMatrices, BnrReport, BnrStatus,
    PointCheck,
};
pub use conjugacy::{conjugacy_search, default_bound, ConjugacyResult};
pub use formulas::{degree_formulas, polarized_rank, DegreeRecord, Group};
pub use higgs::{
    companion, cover_coeffs, cover_from_coeffs, discriminant, gsp_char_identity, gsp_translate, matrix_display,
    spectral_cover, taylor_shift, HiggsChart,
};
pub use module::{
    fractional_form, higgs_to_module, krylov_form, module_basis, module_to_higgs, pushforward, KrylovForm, ModuleForm,
    Pushforward, SpectralModule,
};
pub use structure::{
    norm_fiber_check, sigma_pullback, sp_duality_check, sp_duality_twist, sp_parity_check, verify_sp_witness,
    NormFiber, SpDuality,
};
