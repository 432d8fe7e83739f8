"""Request execution: the single marshaling layer between the wire models
and the core library, used identically by the HTTP routes and the CLI."""

import numpy as np

from .. import analysis, linalg, riccati, sim
from ..adrc import build_controller, discretize_zoh
from ..errors import NumericsError
from ..lti import StateSpace
from ..tuning import (bandwidth_controller_gains, bandwidth_observer_gains,
                      half_gain_controller, half_gain_observer, tune)
from . import schemas

DEVIATION_TOL = 1e-8


def _pole_pairs(roots) -> list[list[float]]:
    return [[float(r.real), float(r.imag)] for r in roots]


def _controller_poles(k: np.ndarray):
    a, b = linalg.integrator_chain(k.size)
    return linalg.poly_roots(linalg.charpoly(a - np.outer(b, k)))


def _observer_poles(l: np.ndarray):
    a = np.eye(l.size, k=1)
    c = np.zeros(l.size)
    c[0] = 1.0
    return linalg.poly_roots(linalg.charpoly(a - np.outer(l, c)))


def run_tune(req: schemas.TuneRequest) -> schemas.TuneResponse:
    cfg = req.to_config()
    gains = tune(cfg)
    return schemas.TuneResponse(
        k=[float(v) for v in gains.k],
        l=[float(v) for v in gains.l],
        mode=cfg.mode.value,
        poles_controller=_pole_pairs(_controller_poles(gains.k)),
        poles_observer=_pole_pairs(_observer_poles(gains.l)),
    )


def run_verify_theorem(req: schemas.VerifyTheoremRequest) -> schemas.VerifyTheoremResponse:
    """Compare Riccati-oracle gains against halved bandwidth gains.

    The observer variant checks the dual design on the extended
    (order+1)-state chain with the same decay rate.
    """
    if req.design == "controller":
        solution = riccati.solve_are(riccati.RiccatiProblem.for_chain(req.order, req.alpha))
        oracle = solution.gains
        halved = half_gain_controller(bandwidth_controller_gains(req.order, req.alpha))
    else:
        solution = riccati.solve_are(riccati.RiccatiProblem.for_chain(req.order + 1, req.alpha))
        oracle = solution.gains[::-1]
        halved = half_gain_observer(bandwidth_observer_gains(req.order, req.alpha))
    deviation = float(np.max(np.abs(oracle - halved) / np.abs(halved)))
    return schemas.VerifyTheoremResponse(
        order=req.order,
        alpha=req.alpha,
        design=req.design,
        iterations=solution.iterations,
        residual=solution.residual,
        gains_riccati=[float(v) for v in oracle],
        gains_half_bandwidth=[float(v) for v in halved],
        max_rel_deviation=deviation,
        passed=bool(deviation < DEVIATION_TOL and solution.residual < 1e-10),
    )


def _controllers_per_mode(plant: schemas.PlantModel, tuning: schemas.TuningParams,
                          modes: list[str]):
    for mode in modes:
        cfg = tuning.to_config(mode=mode)
        yield mode, build_controller(cfg, tune(cfg))


def run_bode(req: schemas.BodeRequest) -> schemas.TableResponse:
    plant_tf = req.plant.to_tf()
    grid = req.grid
    columns = ["omega"]
    data = []
    for mode, ctrl in _controllers_per_mode(req.plant, req.tuning, req.modes):
        if req.target == "controller-feedback":
            tf = analysis.controller_feedback_tf(ctrl)
            label = f"cfb_{mode}"
        else:
            tf = analysis.loop_gain(ctrl, plant_tf)
            label = f"g0_{mode}"
        fr = analysis.freq_response(tf, grid.omega_min, grid.omega_max, grid.points)
        if not data:
            data.append(fr.omegas)
        columns += [f"{label}_mag", f"{label}_phase_deg"]
        data += [fr.magnitude, fr.phase_deg]
    rows = np.column_stack(data)
    return schemas.TableResponse(columns=columns,
                                 rows=[[float(v) for v in row] for row in rows])


def run_gang_of_six(req: schemas.GangOfSixRequest) -> schemas.TableResponse:
    plant_tf = req.plant.to_tf()
    columns = []
    data = []
    for mode, ctrl in _controllers_per_mode(req.plant, req.tuning, req.modes):
        gang = analysis.gang_of_six(ctrl, plant_tf)
        if not gang.is_stable():
            offending = [p for p in gang.poles() if p.real >= 0]
            raise NumericsError(f"closed loop unstable in mode {mode}: poles {offending}")
        if req.output == "freq":
            if not columns:
                columns = ["omega"]
            for name, tf in gang.members().items():
                fr = analysis.freq_response(tf, req.grid.omega_min, req.grid.omega_max,
                                            req.grid.points)
                if len(data) == 0:
                    data.append(fr.omegas)
                columns += [f"{name}_{mode}_mag", f"{name}_{mode}_phase_deg"]
                data += [fr.magnitude, fr.phase_deg]
        else:
            if not columns:
                columns = ["time"]
            for i, inp in enumerate("rdn"):
                member = StateSpace(gang.ss.a, gang.ss.b[:, [i]], gang.ss.c,
                                    gang.ss.d[:, [i]], output_names=("y", "u"))
                trace = analysis.step_response(member, req.t_final, req.dt)
                if len(data) == 0:
                    data.append(trace.column("time"))
                columns += [f"g_y{inp}_{mode}", f"g_u{inp}_{mode}"]
                data += [trace.column("y"), trace.column("u")]
    rows = np.column_stack(data)
    return schemas.TableResponse(columns=columns,
                                 rows=[[float(v) for v in row] for row in rows])


def run_step(req: schemas.StepRequest) -> schemas.TableResponse:
    """Normalized chain step responses: bandwidth design vs halved gains."""
    a, b = linalg.integrator_chain(req.order)
    k_bw = bandwidth_controller_gains(req.order, req.omega_cl)
    data = []
    columns = ["time"]
    for label, k in (("bandwidth", k_bw), ("half_gain", half_gain_controller(k_bw))):
        ss = StateSpace(a - np.outer(b, k), b * k[0], np.eye(1, req.order), 0.0)
        trace = analysis.step_response(ss, req.t_final, req.dt)
        if not data:
            data.append(trace.column("time"))
        columns.append(f"y_{label}")
        data.append(trace.column("y"))
    rows = np.column_stack(data)
    return schemas.TableResponse(columns=columns,
                                 rows=[[float(v) for v in row] for row in rows])


def run_simulate(case: schemas.CaseConfig, mode: str | None = None) -> schemas.SimulateResponse:
    cfg = case.tuning.to_config(mode=mode)
    dc = discretize_zoh(build_controller(cfg, tune(cfg)), case.simulation.ts)
    trace = sim.simulate(
        case.plant.to_tf(), dc,
        case.simulation.reference.to_spec(),
        case.simulation.input_disturbance.to_spec(),
        case.simulation.noise.to_spec(),
        case.simulation.t_final,
    )
    ref = case.simulation.reference.amplitude
    if ref != 0.0:
        m = sim.metrics(trace, ref_value=ref)
    else:
        rms_u, rms_y_err = sim.steady_state_rms(trace, 0.0)
        m = sim.Metrics(rms_u=rms_u, rms_y_err=rms_y_err,
                        overshoot_pct=0.0, settling_time_2pct=0.0)
    table = schemas.TableResponse(
        columns=trace.names,
        rows=[[float(v) for v in row]
              for row in np.column_stack([trace.column(c) for c in trace.names])],
    )
    return schemas.SimulateResponse(mode=cfg.mode.value,
                                    metrics=schemas.MetricsModel(**m.as_dict()),
                                    trace=table)
