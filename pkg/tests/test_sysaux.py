"""Tests for worker resolution and the ordered process-pool map."""

import pytest

from phonon_bs.core.errors import ConfigValidationError
from phonon_bs.utils import SysAuxiliar
import phonon_bs.options.global_vars as global_vars


def square(x: int) -> int:
    return x * x


class TestResolveThreads:

    def test_flag_wins(self, monkeypatch):
        monkeypatch.setenv(global_vars.THREADS_ENV_VAR, "3")
        assert SysAuxiliar().resolve_threads(flag=2, config_value=5) == 2

    def test_environment_before_config(self, monkeypatch):
        monkeypatch.setenv(global_vars.THREADS_ENV_VAR, "3")
        assert SysAuxiliar().resolve_threads(config_value=5) == 3

    def test_config_value(self, monkeypatch):
        monkeypatch.delenv(global_vars.THREADS_ENV_VAR, raising=False)
        assert SysAuxiliar().resolve_threads(config_value=5) == 5

    def test_available_cpus(self, monkeypatch):
        monkeypatch.delenv(global_vars.THREADS_ENV_VAR, raising=False)
        assert SysAuxiliar().resolve_threads() == SysAuxiliar.available_threads() >= 1

    @pytest.mark.parametrize("value", ["zero", "0", "-2"])
    def test_bad_environment(self, monkeypatch, value):
        monkeypatch.setenv(global_vars.THREADS_ENV_VAR, value)
        with pytest.raises(ConfigValidationError) as info:
            SysAuxiliar().resolve_threads()
        assert info.value.field == global_vars.THREADS_ENV_VAR


class TestParallelMap:

    @pytest.mark.parametrize("threads", [1, 2])
    def test_results_in_job_order(self, threads):
        seen = []
        out = SysAuxiliar.parallel_map(square, range(8), threads=threads, on_result=lambda i, r: seen.append(i))
        assert out == [x * x for x in range(8)]
        assert seen == list(range(8))

    def test_empty_jobs(self):
        assert SysAuxiliar.parallel_map(square, [], threads=4) == []
