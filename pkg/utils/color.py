# Standard Library
import sys
from typing import Union, Callable

# Third-Party Library
from colorama import Fore, Style, init

init(autoreset=True)

Printable = Union[str, int, float, bool, list, tuple, dict, set, None]

# status lines are suppressed when quiet, errors never are
_console = {"quiet": False}


def set_quiet(quiet: bool) -> None:
    _console["quiet"] = bool(quiet)


def is_quiet() -> bool:
    return _console["quiet"]


def colorizer(color_code: str, prefix: str = "", bright: bool = False):
    def decorate(func: Callable) -> Callable:
        def wrapper(text: Printable, _bright: bool = False) -> str:
            emphasis = Style.BRIGHT if _bright or bright else ""
            return f"{color_code}{prefix}{Fore.RESET}{color_code}{emphasis}{text}{Style.RESET_ALL}"
        wrapper.__name__ = func.__name__
        return wrapper
    return decorate


@colorizer(Fore.GREEN, prefix="INFO: ")
def info():
    ...


@colorizer(Fore.RED, prefix="ERROR: ", bright=True)
def error():
    ...


@colorizer(Fore.GREEN)
def green():
    ...


@colorizer(Fore.RED, bright=True)
def red():
    ...


def report(line: str, force: bool = False) -> None:
    """ print a status line on stderr, stdout stays reserved for machine output """
    if force or not _console["quiet"]:
        print(line, file=sys.stderr)
