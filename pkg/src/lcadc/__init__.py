"""Behavioural simulator for an asynchronous floating-window level-crossing ADC
whose tracking comparators are switched off during each update handshake."""
from .ackgen import ClockConfig, ack_times, expected_off_time
from .adcmodel import DEC, INC, AdcConfig, dac_voltage, quantize, update_level, window
from .afsm import AfsmSignals, AfsmState, afsm_eval, check_equivalence, graph_step
from .ecgexp import EcgReport, run_ecg
from .engine import CrossingEvent, SimTrace, find_next_crossing, simulate
from .kernels import BACKEND_NAME
from .metrics import Reconstruction, reconstruct, tracking_error
from .power import (PowerReport, analytic_mean_power, max_clock_period, max_tracking_frequency,
                    measured_power, sweep_off_fraction)
from .signal import SignalSource, load_record, make_sine, make_triangle, scale_to_full_scale

__version__ = "0.1.0"

__all__ = [
    "AdcConfig", "AfsmSignals", "AfsmState", "BACKEND_NAME", "ClockConfig", "CrossingEvent", "DEC",
    "EcgReport", "INC", "PowerReport", "Reconstruction", "SignalSource", "SimTrace",
    "ack_times", "afsm_eval", "analytic_mean_power", "check_equivalence", "dac_voltage",
    "expected_off_time", "find_next_crossing", "graph_step", "load_record", "make_sine",
    "make_triangle", "max_clock_period", "max_tracking_frequency", "measured_power", "quantize",
    "reconstruct", "run_ecg", "scale_to_full_scale", "simulate", "sweep_off_fraction",
    "tracking_error", "update_level", "window",
]
