# Standard Library
import copy
import argparse
import contextlib
from pathlib import Path
from ast import literal_eval
from typing import Any, Optional

# My Library
from .io import load_json, load_yaml
from .errors import UsageError


DEFAULT_CONFIG = Path(__file__).resolve().parent.joinpath("../config/hgrid.yaml")


class ConfigNode(dict):
    """ Configuration in Tree-like Structure """

    def __init__(
        self,
        key_list: Optional[list] = None,
        init_dict: Optional[dict] = None,
    ) -> None:
        key_list = [] if key_list is None else key_list
        init_dict = {} if init_dict is None else init_dict
        for key, value in init_dict.items():
            if isinstance(value, dict) and not isinstance(value, ConfigNode):
                init_dict[key] = ConfigNode(
                    key_list=key_list + [key], init_dict=value)
        super(ConfigNode, self).__init__(init_dict)

    def __getattr__(self, name):
        if name in self:
            return self[name]
        raise AttributeError(name)

    def __setattr__(self, name, value) -> None:
        self[name] = value

    def __deepcopy__(self, memo) -> "ConfigNode":
        return ConfigNode(init_dict={k: copy.deepcopy(v, memo) for k, v in self.items()})

    def __str__(self) -> str:
        lines = []
        for key, value in sorted(self.items()):
            if isinstance(value, ConfigNode):
                nested = str(value).split("\n")
                lines.append(f"{key}:")
                lines.extend("  " + line for line in nested if line)
            else:
                lines.append(f"{key}: {value}")
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({super(ConfigNode, self).__repr__()})"


def parse_yaml_config(yaml_path: Path = DEFAULT_CONFIG) -> ConfigNode:
    """
    Parses a YAML configuration file, replacing ${var} references with the values declared in
    its `variables` section.

    Args:
        yaml_path: Path to the YAML configuration file.

    Returns:
        The parsed configuration with variables replaced.
    """
    raw_content = load_yaml(yaml_path)

    def replace_variables(unit, var_name: str, var_value: str):
        """ depth-first traversal """
        if isinstance(unit, str):
            return unit.replace(f"${{{var_name}}}", str(var_value))
        if isinstance(unit, list):
            return [replace_variables(u, var_name, var_value) for u in unit]
        if isinstance(unit, dict):
            return {k: replace_variables(v, var_name, var_value) for k, v in unit.items()}
        return unit

    for var_name, var_value in (raw_content.get("variables") or {}).items():
        raw_content = replace_variables(raw_content, var_name, var_value)

    return ConfigNode(init_dict=raw_content)


def to_value(expression: Any) -> Any:
    # only strings are evaluated, i.e. "1e-4" becomes 1e-4 and "abc" stays "abc"
    if not isinstance(expression, str):
        return expression
    with contextlib.suppress(ValueError, SyntaxError):
        return literal_eval(expression)
    return expression


def merge_cmd_config(args: argparse.Namespace, yaml_config: ConfigNode, section: str) -> ConfigNode:
    """
    Layers the run configuration: YAML defaults, then `--config-json`, then explicit flags, then
    `--opts section.key value` pairs.

    Args:
        args: parsed command line; flags left at None count as not given.
        yaml_config: defaults from `parse_yaml_config`.
        section: config section the subcommand reads its flags into.

    Returns:
        A new ConfigNode, the RunConfig of the subcommand.

    Raises:
        UsageError: malformed `--config-json` or `--opts`.
    """
    config = copy.deepcopy(yaml_config)
    if section not in config or config[section] is None:
        config[section] = ConfigNode()

    def assign(full_key: str, value: Any) -> None:
        namespace, _, key = full_key.rpartition(".")
        namespace = namespace or section
        key = key.replace("-", "_")
        if namespace not in config:
            raise UsageError("unknown configuration section", section=namespace)
        config[namespace][key] = value

    config_json = getattr(args, "config_json", None)
    if config_json is not None:
        loaded = load_json(Path(config_json))
        if not isinstance(loaded, dict):
            raise UsageError("--config-json must hold a JSON object", file=config_json)
        for full_key, value in loaded.items():
            assign(full_key, value)

    for key, value in vars(args).items():
        if key in ("config_json", "opts", "command", "action", "handler", "section") or value is None:
            continue
        assign(key, value)

    opts = getattr(args, "opts", None)
    if opts:
        if len(opts) % 2 != 0:
            raise UsageError("option and value mismatch for --opts", opts=" ".join(opts))
        for full_key, value in zip(opts[::2], opts[1::2]):
            assign(full_key, to_value(value))

    if "console" in config and getattr(args, "quiet", None):
        config.console.quiet = True
    return config


def get_config(args: argparse.Namespace, section: str, yaml_path: Path = DEFAULT_CONFIG) -> ConfigNode:
    return merge_cmd_config(args, parse_yaml_config(yaml_path), section)


if __name__ == "__main__":
    print(parse_yaml_config())
