import logging
import os

import pytest

from config.logging_config import set_console_level, setup_logging
from config.settings import load_settings
from metrics.errors import ConfigError


@pytest.fixture(autouse=True)
def no_override(monkeypatch):
    monkeypatch.delenv('SKEW_CONFIG', raising=False)


class TestLoadSettings:
    def test_packaged_defaults(self):
        settings = load_settings()
        assert settings['metrics']['epsilon'] == [0.5]
        assert settings['metrics']['ratios'] == ['80/20', '90/10']
        assert settings['policy']['include_zeros'] is True
        assert settings['bootstrap']['resamples'] == 200
        assert settings['lorenz']['log_floor'] == pytest.approx(1e-6)

    def test_override_is_deep_merged(self, write_file):
        path = write_file('override.yaml', 'bootstrap:\n  seed: 99\nmetrics:\n  top_x: [5]\n')
        settings = load_settings(path)
        assert settings['bootstrap']['seed'] == 99
        assert settings['bootstrap']['resamples'] == 200
        assert settings['metrics']['top_x'] == [5]
        assert settings['metrics']['epsilon'] == [0.5]

    def test_override_from_environment(self, write_file, monkeypatch):
        monkeypatch.setenv('SKEW_CONFIG', write_file('env.yaml', 'lorenz:\n  points: 50\n'))
        assert load_settings()['lorenz']['points'] == 50

    def test_explicit_path_wins_over_environment(self, write_file, monkeypatch):
        monkeypatch.setenv('SKEW_CONFIG', write_file('env.yaml', 'lorenz:\n  points: 50\n'))
        assert load_settings(write_file('flag.yaml', 'lorenz:\n  points: 70\n'))['lorenz']['points'] == 70

    def test_unreadable_override(self, tmp_path):
        with pytest.raises(ConfigError):
            load_settings(str(tmp_path / 'missing.yaml'))

    def test_invalid_yaml(self, write_file):
        with pytest.raises(ConfigError):
            load_settings(write_file('bad.yaml', 'metrics: [unclosed\n'))

    def test_non_mapping(self, write_file):
        with pytest.raises(ConfigError):
            load_settings(write_file('list.yaml', '- 1\n- 2\n'))


class TestLogging:
    def test_handlers_attached_once(self):
        first = setup_logging('tests.logging.once')
        second = setup_logging('tests.logging.once')
        assert first is second
        assert len(first.handlers) == 2

    def test_file_handler_in_log_dir(self):
        logger = setup_logging('tests.logging.dir')
        files = [h for h in logger.handlers if isinstance(h, logging.FileHandler)]
        assert os.path.dirname(files[0].baseFilename) == os.path.abspath(os.environ['SKEW_LOG_DIR'])

    def test_console_level(self):
        logger = setup_logging('tests.logging.console')
        console = next(h for h in logger.handlers if not isinstance(h, logging.FileHandler))
        assert console.level == logging.WARNING
        set_console_level(logging.INFO)
        try:
            assert console.level == logging.INFO
        finally:
            set_console_level(logging.WARNING)
