"""
Reads configuration from a yaml file and returns a dictionary of configuration settings

A configuration object is a dictionary where each key has the format <prefix>__<parameter>
(to distinguish configuration arguments from normal keyword arguments).
"""

import inspect
import re
import sys
from functools import cache, reduce, wraps
from pathlib import Path

import toolz as tz
import yaml
from toolz import curried

from .errors import ConfigError

_with_prefix = lambda prefix, dict_: tz.keymap(lambda k: f"{prefix}__{k}", dict_)


@cache
def _load_yaml(config_path: str | Path) -> dict:
    try:
        with open(config_path, "r") as file:
            return yaml.safe_load(file) or {}
    except FileNotFoundError as e:
        raise ConfigError(f"configuration file {config_path} not found", "config") from e
    except yaml.YAMLError as e:
        raise ConfigError(f"cannot parse {config_path}: {e}", "config") from e


def _section(name: str, config_path: str | Path) -> dict:
    config = _load_yaml(config_path)
    return _with_prefix(name, config[name]) if config.get(name) else {}


@cache
def walk_config(config_path: str | Path = "configuration.yaml") -> dict:
    return _section("walk", config_path)


@cache
def qsw_config(config_path: str | Path = "configuration.yaml") -> dict:
    # yaml lists -> tuples, operator kinds are used as set-like keys
    return tz.valmap(
        lambda v: tuple(v) if isinstance(v, list) else v,
        _section("qsw", config_path),
    )


@cache
def estimator_config(config_path: str | Path = "configuration.yaml") -> dict:
    return tz.valmap(
        lambda v: tuple(v) if isinstance(v, list) else v,
        _section("estimator", config_path),
    )


@cache
def figures_config(config_path: str | Path = "configuration.yaml") -> dict:
    return _section("figures", config_path)


@cache
def logger_config(config_path: str | Path = "configuration.yaml") -> dict:
    config = _section("logger", config_path)
    if "logger__sink" not in config:
        return config

    # Replace string with corresponding file object if present
    mapping = {"stdout": sys.stdout, "stderr": sys.stderr}
    return tz.assoc(
        config, "logger__sink", mapping.get(config["logger__sink"], config["logger__sink"])
    )


def configuration(config_path: str | Path = "configuration.yaml") -> dict:
    """
    The entire configuration for the project
    """
    return reduce(
        tz.merge,
        [
            walk_config(config_path),
            qsw_config(config_path),
            estimator_config(config_path),
            figures_config(config_path),
            logger_config(config_path),
        ],
    )


def auto_match_config(*, prefixes: list[str]):
    """
    Automatically pass configuration values to function parameters

    A configuration object is a dictionary where each key has the format
    `<prefix>__<parameter>.` Prefixes are stripped before being passed to
    the function parameters. Only keys whose prefix is in `prefixes` are
    considered.

    If the function has a `kwargs` parameter, the entire configuration
    dictionary (prefixes kept) is forwarded to it as well, so inner functions
    decorated the same way can pick their own values.

    Explicit keyword arguments override configuration values, e.g. `omega=0.3`
    in `qsw_evolve(..., omega=0.3, **config)` wins over `config["qsw__omega"]`.
    Overriding must be done by keyword, never by position.

    Parameters
    ----------
    prefixes : list[str]
        Sections of the configuration to read from. If two sections define
        the same parameter, the one appearing later in the dictionary wins.

    Examples
    --------
    >>> @auto_match_config(prefixes=["qsw"])
    ... def evolve(omega, atol=1e-10):
    ...    return omega, atol
    >>> config = {"qsw__omega": 0.1, "qsw__atol": 1e-12, "estimator__t_star": 3.0}
    >>> evolve(**config)
    (0.1, 1e-12)
    >>> evolve(omega=0.5, **config)
    (0.5, 1e-12)
    """

    def wrapper(func):

        @wraps(func)
        def wrapped(*args, **kwargs):
            strip_prefix = lambda k: re.sub(r"^[^_]*__", "", k)

            params = inspect.signature(func).parameters
            # length 1 means key don't begin with a prefix, hence not from config
            non_config_kwargs = tz.keyfilter(lambda k: len(k.split("__")) == 1, kwargs)
            filtered_kwargs = tz.pipe(
                kwargs,
                curried.keyfilter(lambda k: len(k.split("__")) > 1),
                (
                    curried.keyfilter(lambda k: k.split("__")[0] in prefixes)
                    if prefixes
                    else tz.identity
                ),
                # non-config kwargs are merged last so they override config values
                lambda config_kwargs: tz.merge(config_kwargs, non_config_kwargs),
                curried.keymap(strip_prefix),
                (
                    curried.keyfilter(lambda k: k in params)
                    if "kwargs" not in params
                    else lambda config_kwargs: curried.merge(kwargs, config_kwargs)
                ),
            )

            return func(*args, **filtered_kwargs)

        return wrapped

    return wrapper
