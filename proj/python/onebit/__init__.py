"""Python bindings for the 1-bit massive MU-MIMO-OFDM downlink simulator."""

from ._core import (
    BerRow,
    ConfigError,
    DacMode,
    ExperimentKind,
    ExperimentSpec,
    GainMode,
    RmseRow,
    Scenario,
    SindrRow,
    SyncMode,
    SystemConfig,
    all_subcarriers,
    beta,
    bussgang_gain,
    dc_centered_subcarriers,
    desk_scale_config,
    dft,
    draw_channel,
    error_covariance,
    idft,
    load_scenario,
    paper_scale_config,
    parse_scenario,
    phi,
    psi,
    quantize,
    run_ber_curve,
    run_sindr_sweep,
    run_sync_rmse,
    sindr_reference_config,
    to_csv,
    zf_precode,
)

__all__ = [name for name in dir() if not name.startswith("_")]
