# -*- coding: utf-8 -*-
import logging

import config


def test_integer_setting_from_environment(monkeypatch):
    monkeypatch.setenv("TABLING_TEST_BUDGET", "250")
    assert config.get_int_setting("TABLING_TEST_BUDGET", 0) == 250


def test_missing_integer_setting_uses_default(monkeypatch):
    monkeypatch.delenv("TABLING_TEST_BUDGET", raising=False)
    assert config.get_int_setting("TABLING_TEST_BUDGET", 7) == 7


def test_malformed_integer_setting_warns(monkeypatch, caplog):
    monkeypatch.setenv("TABLING_TEST_BUDGET", "lots")
    with caplog.at_level(logging.WARNING, logger="config"):
        assert config.get_int_setting("TABLING_TEST_BUDGET", 0) == 0
    assert "⚠️" in caplog.text
    assert "TABLING_TEST_BUDGET" in caplog.text and "lots" in caplog.text
