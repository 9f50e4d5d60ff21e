#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
# exp_orchestra.py

**Project**: PhononBS - Mechanically Controlled Beam Splitter Toolkit
**Description**: PhononBS ExpOrchestra: runs one scenario end to end and records it
**Author**: PhononBS contributors
**Created**: 2026-10-19
**Version**: 1.0.0
**License**: GPLv3
"""


# ─────────────────────────────────────────────────────────────────────────────
# Standard Library Imports
import datetime
import hashlib
import logging
import time
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Any, Callable, Optional

# ─────────────────────────────────────────────────────────────────────────────
# Third-Party Imports
import numpy as np
import yaml

# ─────────────────────────────────────────────────────────────────────────────
# Local Application Imports
from phonon_bs.core.closed_system import control_curves
from phonon_bs.core.data_ex import SCHEMAS, DataEx
from phonon_bs.core.errors import PhononBSError
from phonon_bs.core.fock_master import hom_dip, joint_detection_probability, mz_observables
from phonon_bs.core.memory_prep import memory_condition, memory_fidelity_trace
from phonon_bs.core.run_config import RunConfig
from phonon_bs.core.semiclassical import (
    bs_map,
    hom_joint_probability,
    mz_visibility,
    transmission_reflection,
)
from phonon_bs.core.trajectories import estimate_g2
from phonon_bs.utils import SysAuxiliar, ViewTools
import phonon_bs.options.global_vars as global_vars


Summary = dict[str, Any]


def _beta_label(beta: Optional[float]) -> str:
    return "inf" if beta is None else format(beta, "g")


# ─────────────────────────────────────────────────────────────
# ⚗️ ExpOrchestra Class
# ─────────────────────────────────────────────────────────────
class ExpOrchestra:
    """
    Runs a configured scenario: sweeps, CSV export, run log and run record.

    ### Attributes
    - **vt** (`ViewTools`): Console and log reporting.
    - **dataex** (`DataEx`): CSV writer.
    - **sysaux** (`SysAuxiliar`): Thread resolution.
    - **cfg** (`Optional[RunConfig]`): Loaded configuration.
    - **hash_id** (`Optional[str]`): 4-hex-digit run identifier.
    - **threads** (`int`): Worker processes for this run.
    - **output_dir** (`Path`): Directory receiving every artifact.
    - **output_log** (`Optional[Path]`): Run log file.
    - **output_yaml** (`Optional[Path]`): Run record file.
    - **logger** (`Optional[logging.Logger]`): Run logger.
    - **state** (`str`): `"Idle"`, `"Loaded"`, `"Running"`, `"Finished"` or `"Failed"`.
    - **summary** (`Summary`): Headline values of the last run.
    """

# ─────────────────────────────────────────────────────────────────────────────
# 🚧 Function: constructor
# ─────────────────────────────────────────────────────────────────────────────
    def __init__(
        self,
        dataex: Optional[DataEx] = None,
        vt: Optional[ViewTools] = None,
        sysaux: Optional[SysAuxiliar] = None,
    ) -> None:

        self.vt: ViewTools = vt or ViewTools()
        self.dataex: DataEx = dataex or DataEx(self.vt)
        self.sysaux: SysAuxiliar = sysaux or SysAuxiliar(self.vt.console)

        # Run metadata
        self.cfg: Optional[RunConfig] = None
        self.hash_id: Optional[str] = None
        self.threads: int = 1
        self.start_ts: Optional[float] = None
        self.state: str = "Idle"
        self.summary: Summary = {}

        # Output paths
        self.output_dir: Path = global_vars.OUTPUT_DIR
        self.output_log: Optional[Path] = None
        self.output_yaml: Optional[Path] = None

        # Logging
        self.logger: Optional[logging.Logger] = None

# ─────────────────────────────────────────────────────────────────────────────
# 📌 Function: load_run
# ─────────────────────────────────────────────────────────────────────────────
    def load_run(self, cfg: RunConfig, threads_flag: Optional[int] = None) -> None:
        """
        Prepares a run: identifier, output paths, worker count and logger.

        ### Args
        - **cfg** (`RunConfig`): Validated configuration.
        - **threads_flag** (`Optional[int]`): Value of `--threads`.

        ### Raises
        - `ConfigValidationError`: If the thread count is invalid.
        """

        self.cfg = cfg
        self.hash_id = hashlib.md5(str(time.time()).encode()).hexdigest()[:4]
        self.threads = self.sysaux.resolve_threads(threads_flag, cfg.threads)

        self.output_dir = Path(cfg.output_path) if cfg.output_path else global_vars.OUTPUT_DIR
        self.output_dir.mkdir(parents=True, exist_ok=True)
        self.output_log = self.output_dir / f"{cfg.scenario}_{self.hash_id}.log"
        self.output_yaml = (self.output_dir / f"{cfg.scenario}_{self.hash_id}.yaml").resolve()

        self.setup_logger()
        self.state = "Loaded"
        self.vt.console_message("info", f"Run {self.hash_id}: {cfg.scenario} with {self.threads} worker(s)", logger=self.logger)

# ─────────────────────────────────────────────────────────────────────────────
# 📌 Function: setup_logger
# ─────────────────────────────────────────────────────────────────────────────
    def setup_logger(self) -> logging.Logger:
        """Run logger writing to a rotating file in the output directory."""

        self.logger = logging.getLogger(f"phonon_bs_run_{self.hash_id}")
        self.logger.setLevel(logging.DEBUG)
        self.logger.propagate = False

        if not self.logger.handlers:
            handler = RotatingFileHandler(self.output_log, maxBytes=5_000_000, backupCount=3, encoding="utf-8")
            formatter = logging.Formatter('%(asctime)s - %(levelname)s - %(message)s')
            handler.setFormatter(formatter)
            self.logger.addHandler(handler)
        return self.logger

    def close_logger(self) -> None:
        if self.logger:
            for handler in list(self.logger.handlers):
                handler.close()
                self.logger.removeHandler(handler)

# ─────────────────────────────────────────────────────────────────────────────
# 📌 Function: run_scenario
# ─────────────────────────────────────────────────────────────────────────────
    def run_scenario(self) -> Summary:
        """
        Executes the loaded scenario and writes its CSV files and run record.

        ### Returns
        - `Summary`: Headline values of the run.

        ### Raises
        - `PhononBSError`: Any module failure; the state becomes `"Failed"`.
        """

        if self.state != "Loaded" or self.cfg is None:
            raise PhononBSError("No run loaded")

        scenarios: dict[str, Callable[[RunConfig], Summary]] = {
            "mz-sweep":         self.run_mz_sweep,
            "hom-dip":          self.run_hom_dip,
            "hom-mc":           self.run_hom_mc,
            "control-curves":   self.run_control_curves,
            "memory-prep":      self.run_memory_prep,
            "bs-map":           self.run_bs_map,
        }

        self.vt.console_message("title", f"Running {self.cfg.scenario}", "⚗️", logger=self.logger)
        self.state = "Running"
        self.start_ts = time.time()
        try:
            self.summary = scenarios[self.cfg.scenario](self.cfg)
        except Exception:
            self.state = "Failed"
            raise

        self.state = "Finished"
        elapsed = time.time() - self.start_ts
        self.write_run_record(elapsed)
        self.vt.console_message("success", f"{self.cfg.scenario} finished in {elapsed:.1f} s", logger=self.logger)
        return self.summary

    def _csv(self, name: str, rows: list) -> Path:
        return self.dataex.write_csv(rows, SCHEMAS[name], self.output_dir / f"{name}.csv", logger=self.logger)

# ─────────────────────────────────────────────────────────────────────────────
# 🌈 Function: run_mz_sweep
# ─────────────────────────────────────────────────────────────────────────────
    def run_mz_sweep(self, cfg: RunConfig) -> Summary:
        """MZ pattern per mechanical amplitude: time-resolved and integrated."""

        rows, integrated = [], []
        summary: Summary = {}
        with self.vt.progress("MZ sweep over beta", len(cfg.beta_list)) as advance:
            for beta in cfg.beta_list:
                p = cfg.system_params(beta)
                obs = mz_observables(
                    p, cfg.phi_grid, cfg.t_grid, dt=cfg.dt, t_end=cfg.t_end,
                    frame=cfg.frame, mech_dim=cfg.mech_dim, logger=self.logger,
                )
                for i, phi in enumerate(obs.phi):
                    for j, t in enumerate(obs.t):
                        rows.append((beta, phi, t, obs.pu[i, j], obs.visibility[j], obs.v_integrated))
                    integrated.append((beta, phi, obs.pu_integrated[i]))
                summary[f"v_integrated (beta={_beta_label(beta)})"] = obs.v_integrated
                self.vt.console_message(
                    "info", f"beta={_beta_label(beta)}: v_integrated={obs.v_integrated:.6g}", indent=1, logger=self.logger
                )
                advance()

        self._csv("mz-sweep", rows)
        self._csv("mz-sweep_integrated", integrated)
        if cfg.kappa1 == cfg.kappa2:
            summary["v_MZ semiclassical"] = mz_visibility(cfg.system_params(None))
        return summary

# ─────────────────────────────────────────────────────────────────────────────
# 🔀 Function: run_hom_dip
# ─────────────────────────────────────────────────────────────────────────────
    def run_hom_dip(self, cfg: RunConfig) -> Summary:
        """Coincidence rate over (τ, t) per amplitude and the dip visibility."""

        rows, vis_rows = [], []
        summary: Summary = {}
        total = len(cfg.beta_list) * len(cfg.tau_grid)
        with self.vt.progress("HOM dip over (beta, tau)", total) as advance:
            for beta in cfg.beta_list:
                dip = hom_dip(
                    cfg.system_params(beta), cfg.tau_grid, cfg.t_grid, dt=cfg.dt,
                    frame=cfg.frame, mech_dim=cfg.mech_dim, threads=self.threads,
                    on_result=advance, logger=self.logger,
                )
                for i, tau in enumerate(dip.tau):
                    for j, t in enumerate(dip.t):
                        rows.append((beta, tau, t, dip.coincidence[i, j]))
                vis_rows.extend((beta, t, v) for t, v in zip(dip.t, dip.visibility))

                k = int(np.argmin(np.abs(dip.t - cfg.detection_time)))
                summary[f"v(t={dip.t[k]:g}) (beta={_beta_label(beta)})"] = float(dip.visibility[k])

        self._csv("hom-dip", rows)
        self._csv("hom-dip_visibility", vis_rows)
        return summary

# ─────────────────────────────────────────────────────────────────────────────
# 🎲 Function: run_hom_mc
# ─────────────────────────────────────────────────────────────────────────────
    def run_hom_mc(self, cfg: RunConfig) -> Summary:
        """
        Monte-Carlo coincidence fraction per (τ, β) next to its deterministic reference.

        The reference is the quadrature joint probability in the semiclassical
        limit and the counting-resolved hierarchy otherwise.
        """

        rows, oracle = [], []
        summary: Summary = {}
        total = len(cfg.tau_grid) * len(cfg.beta_list) * cfg.n_traj
        with self.vt.progress("Trajectories", total) as advance:
            for tau in cfg.tau_grid:
                for beta in cfg.beta_list:
                    p = cfg.system_params(beta, tau=tau)
                    est = estimate_g2(
                        p, cfg.n_traj, master_seed=cfg.master_seed, dt=cfg.dt,
                        frame=cfg.frame, mech_dim=cfg.mech_dim, threads=self.threads,
                        on_result=advance, logger=self.logger,
                    )
                    rows.append((tau, beta, est.n_traj, est.p_hat, est.half_width))

                    if beta is None:
                        joint, n1, n2 = hom_joint_probability(tau, p)
                        reference = (joint, joint / (n1 * n2))
                    else:
                        jd = joint_detection_probability(
                            p, tau=tau, dt=cfg.dt, t_end=cfg.t_end,
                            frame=cfg.frame, mech_dim=cfg.mech_dim, logger=self.logger,
                        )
                        reference = (jd.p11, jd.g2)
                    oracle.append((tau, beta, *reference))

                    label = f"tau={tau:g}, beta={_beta_label(beta)}"
                    summary[f"p_hat ({label})"] = f"{est.p_hat:.4f} ± {est.half_width:.4f}"
                    summary[f"reference ({label})"] = reference[0]

        self._csv("hom-mc", rows)
        self._csv("hom-mc_oracle", oracle)
        return summary

# ─────────────────────────────────────────────────────────────────────────────
# 📈 Function: run_control_curves
# ─────────────────────────────────────────────────────────────────────────────
    def run_control_curves(self, cfg: RunConfig) -> Summary:
        """Off-diagonal magnitudes of the reduced qutrit state over gt."""

        curves = control_curves(cfg.gt_grid)
        keys = ("gt", "R_0_1", "R_0_m1", "R_1_0", "R_m1_0")
        rows = list(zip(*(curves[k] for k in keys)))
        self._csv("control-curves", rows)
        return {f"max |{k}|": float(np.max(curves[k])) for k in keys[1:]}

# ─────────────────────────────────────────────────────────────────────────────
# 🧲 Function: run_memory_prep
# ─────────────────────────────────────────────────────────────────────────────
    def run_memory_prep(self, cfg: RunConfig) -> Summary:
        """Write-pulse swap of the cavity coherent state into the mechanics."""

        params = cfg.memory.params()
        condition = memory_condition(params)
        if not condition.satisfied:
            self.vt.console_message(
                "caution", f"Memory condition margin {condition.margin:.3g} below {global_vars.MEMORY_MARGIN_THRESHOLD:g}",
                indent=1, logger=self.logger,
            )
        rows = memory_fidelity_trace(params, dt=cfg.memory.dt, logger=self.logger)
        self._csv("memory-prep", rows)
        return {
            "final fidelity": rows[-1][1],
            "final trace": rows[-1][2],
            "margin gA/(Gamma T)": condition.margin,
            "condition satisfied": condition.satisfied,
        }

# ─────────────────────────────────────────────────────────────────────────────
# 🗺️ Function: run_bs_map
# ─────────────────────────────────────────────────────────────────────────────
    def run_bs_map(self, cfg: RunConfig) -> Summary:
        """Transmission and visibilities over the κ–ḡ plane."""

        rows = bs_map(cfg.kappa_grid, cfg.gbar_grid, gamma=cfg.gamma)
        self._csv("bs-map", rows)
        best = min(rows, key=lambda r: abs(r.T - 0.5))
        summary: Summary = {
            "points": len(rows),
            "closest to T=0.5": f"kappa={best.kappa:g}, gbar={best.gbar:g} (T={best.T:.4f})",
        }
        if cfg.kappa1 == cfg.kappa2:
            summary["T at configured point"] = transmission_reflection(cfg.system_params(None)).T
        return summary

# ─────────────────────────────────────────────────────────────────────────────
# 💾 Function: write_run_record
# ─────────────────────────────────────────────────────────────────────────────
    def write_run_record(self, elapsed: float) -> Path:
        """Resolved config, timing, outputs and summary as YAML."""

        record = {
            "run_id": self.hash_id,
            "scenario": self.cfg.scenario,
            "status": self.state.lower(),
            "started_at": datetime.datetime.fromtimestamp(self.start_ts).strftime("%d-%m-%Y %H:%M:%S"),
            "elapsed_s": round(elapsed, 3),
            "threads": self.threads,
            "config": self.cfg.to_record(),
            "outputs": [str(p) for p in self.dataex.written],
            "summary": {k: _plain(v) for k, v in self.summary.items()},
        }
        with self.output_yaml.open("w", encoding="utf-8") as file:
            yaml.dump(record, file, sort_keys=False, default_flow_style=False, allow_unicode=True)
        return self.output_yaml

# ─────────────────────────────────────────────────────────────────────────────
# 💾 Function: write_error_record
# ─────────────────────────────────────────────────────────────────────────────
    @staticmethod
    def write_error_record(out_dir: Path, scenario: str, error: BaseException, exit_code: int) -> Optional[Path]:
        """
        Machine-readable record of a failed run, `<out>/<scenario>_error.yaml`.

        ### Returns
        - `Optional[Path]`: The record, or `None` if it could not be written.
        """

        record = {
            "status": "error",
            "exit_code": exit_code,
            "error_type": type(error).__name__,
            "message": str(error).removeprefix("❌ "),
        }
        path = Path(out_dir) / f"{scenario}_error.yaml"
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            with path.open("w", encoding="utf-8") as file:
                yaml.dump(record, file, sort_keys=False, default_flow_style=False, allow_unicode=True)
        except OSError:
            return None
        return path


def _plain(value: Any) -> Any:
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    return value
