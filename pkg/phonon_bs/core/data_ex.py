#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
# data_ex.py

**Project**: PhononBS - Mechanically Controlled Beam Splitter Toolkit
**Description**: PhononBS DataEx: versioned, deterministic CSV export of scenario results
**Author**: PhononBS contributors
**Created**: 2026-10-19
**Version**: 1.0.0
**License**: GPLv3
"""


# ─────────────────────────────────────────────────────────────────────────────
# Standard Library Imports
import csv
import logging
import math
from pathlib import Path
from typing import Any, Iterable, NamedTuple, Optional, Sequence

# ─────────────────────────────────────────────────────────────────────────────
# Third-Party Imports
import numpy as np

# ─────────────────────────────────────────────────────────────────────────────
# Local Application Imports
from phonon_bs.core.errors import InvalidArgumentError, OutputWriteError
from phonon_bs.utils import ViewTools
import phonon_bs.options.global_vars as global_vars


class CsvSchema(NamedTuple):
    name: str
    columns: tuple[str, ...]

    @property
    def header(self) -> str:
        return f"# schema: phonon-bs/{self.name}/{global_vars.CSV_SCHEMA_VERSION}"


SCHEMAS: dict[str, CsvSchema] = {
    s.name: s for s in (
        CsvSchema("mz-sweep", ("beta", "phi", "t", "P_u", "v_t", "v_integrated")),
        CsvSchema("mz-sweep_integrated", ("beta", "phi", "P_u_integrated")),
        CsvSchema("hom-dip", ("beta", "tau", "t", "C")),
        CsvSchema("hom-dip_visibility", ("beta", "t", "v")),
        CsvSchema("hom-mc", ("tau", "beta", "n_traj", "p_hat", "half_width")),
        CsvSchema("hom-mc_oracle", ("tau", "beta", "p_joint", "g2")),
        CsvSchema("control-curves", ("gt", "R_0_1", "R_0_m1", "R_1_0", "R_m1_0")),
        CsvSchema("memory-prep", ("t", "fidelity", "trace")),
        CsvSchema("bs-map", ("kappa", "gbar", "T", "v_mz", "v_hom")),
    )
}


# ─────────────────────────────────────────────────────────────
# 📊 DataEx Class
# ─────────────────────────────────────────────────────────────
class DataEx:
    """
    Writes scenario results as versioned CSV files.

    Every file starts with a `# schema: phonon-bs/<name>/v1` comment, then a
    header row, then one row per record. Numbers are written with 12
    significant digits, `None` (the semiclassical amplitude) as `inf`.

    ### Attributes
    - **vt** (`ViewTools`): Console and log reporting.
    - **written** (`list[Path]`): Files written by this instance, in order.
    """

# ─────────────────────────────────────────────────────────────────────────────
# 🚧 Function: constructor
# ─────────────────────────────────────────────────────────────────────────────
    def __init__(self, vt: Optional[ViewTools] = None) -> None:
        self.vt: ViewTools = vt or ViewTools(quiet=True)
        self.written: list[Path] = []

# ─────────────────────────────────────────────────────────────────────────────
# 📌 Function: format_value
# ─────────────────────────────────────────────────────────────────────────────
    @staticmethod
    def format_value(value: Any) -> str:
        """
        Text of one CSV cell.

        ### Raises
        - `InvalidArgumentError`: For values that are not numbers, strings or `None`.
        """

        if value is None:
            return "inf"
        if isinstance(value, (bool, np.bool_)):
            return str(int(value))
        if isinstance(value, (int, np.integer)):
            return str(int(value))
        if isinstance(value, (float, np.floating)):
            value = float(value)
            if math.isnan(value):
                return "nan"
            if math.isinf(value):
                return "inf" if value > 0 else "-inf"
            # -0.0 + 0.0 is 0.0
            return format(value + 0.0, f".{global_vars.CSV_SIGNIFICANT_DIGITS}g")
        if isinstance(value, str):
            return value
        raise InvalidArgumentError(f"Cannot write {type(value).__name__} to CSV")

# ─────────────────────────────────────────────────────────────────────────────
# 💾 Function: write_csv
# ─────────────────────────────────────────────────────────────────────────────
    def write_csv(
        self,
        rows: Iterable[Sequence[Any]],
        schema: CsvSchema,
        path: Path,
        logger: Optional[logging.Logger] = None,
        extra_indent: int = 0,
    ) -> Path:
        """
        Writes `rows` under `schema` to `path`.

        ### Args
        - **rows** (`Iterable[Sequence]`): Records in column order.
        - **schema** (`CsvSchema`): File name stem and column names.
        - **path** (`Path`): Target file; parent directories are created.
        - **logger** (`Optional[Logger]`): Run logger.
        - **extra_indent** (`int`): Extra indentation of console messages.

        ### Returns
        - `Path`: The written file.

        ### Raises
        - `InvalidArgumentError`: If a row does not match the schema width.
        - `OutputWriteError`: On I/O failure, naming the path.
        """

        width = len(schema.columns)
        lines = []
        for index, row in enumerate(rows):
            row = list(row)
            if len(row) != width:
                raise InvalidArgumentError(
                    f"Row {index} of {schema.name} has {len(row)} values, schema has {width}"
                )
            lines.append([self.format_value(v) for v in row])

        path = Path(path)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            with path.open("w", encoding="utf-8", newline="") as file:
                file.write(schema.header + "\n")
                writer = csv.writer(file, lineterminator="\n")
                writer.writerow(schema.columns)
                writer.writerows(lines)
        except OSError as e:
            raise OutputWriteError(path, e.strerror or str(e)) from None

        self.written.append(path)
        self.vt.console_message(
            "success", f"{schema.name}: {len(lines)} rows → {path}", indent=1 + extra_indent, logger=logger
        )
        return path

# ─────────────────────────────────────────────────────────────────────────────
# 📌 Function: read_csv
# ─────────────────────────────────────────────────────────────────────────────
    @staticmethod
    def read_csv(path: Path) -> tuple[str, list[str], list[list[str]]]:
        """
        Reads a file written by `write_csv`.

        ### Returns
        - `tuple`: (schema comment, header, rows as strings).
        """

        with Path(path).open("r", encoding="utf-8", newline="") as file:
            schema = file.readline().rstrip("\n")
            reader = csv.reader(file)
            header = next(reader, [])
            return schema, header, [row for row in reader]
