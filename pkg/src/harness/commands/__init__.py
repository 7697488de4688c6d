"""
Subcommand registry and dispatcher.

Usage:
    from harness.commands import dispatch

    # In your command module:
    from . import register

    @register("mycommand",
              description="What it does",
              usage="mycommand --flag <value>",
              configure=lambda parser: parser.add_argument("--flag"))
    def handle_mycommand(args):
        yield {"type": "progress", "text": "Working..."}
        yield {"type": "done", "text": "Complete!"}
"""

import argparse
from typing import Callable, Iterator

from utils.constants import EXIT_OK, EXIT_USAGE, EXIT_VIOLATION

# Command registry: name -> {handler, description, usage, configure}
COMMANDS: dict[str, dict] = {}


def register(name: str, description: str, usage: str,
             configure: Callable[[argparse.ArgumentParser], None] | None = None):
    """
    Decorator to register a subcommand.

    The handler is a generator taking the parsed argparse.Namespace and
    yielding dicts with:
        {"type": "progress", "text": "..."}   - Progress update
        {"type": "done", "text": "..."}       - Final result
        {"type": "error", "text": "..."}      - Error message (exit 1)
        {"type": "violation", "text": "..."}  - Inequality violated (exit 2)
    """
    def decorator(fn: Callable):
        COMMANDS[name] = {
            "handler": fn,
            "description": description,
            "usage": usage,
            "configure": configure,
        }
        return fn
    return decorator


def list_commands() -> list[dict]:
    """Return command metadata for help output."""
    return [
        {
            "name": name,
            "description": cmd["description"],
            "usage": cmd["usage"],
        }
        for name, cmd in COMMANDS.items()
    ]


def add_subparsers(parser: argparse.ArgumentParser) -> None:
    """Attach one subparser per registered command."""
    subparsers = parser.add_subparsers(dest="command", metavar="<command>")
    subparsers.required = True
    for name, cmd in COMMANDS.items():
        sub = subparsers.add_parser(name, help=cmd["description"], description=cmd["description"],
                                    usage=cmd["usage"])
        if cmd["configure"]:
            cmd["configure"](sub)


def dispatch(args: argparse.Namespace) -> Iterator[dict]:
    """
    Run the handler for args.command.

    Yields the handler's events. Library errors (ValueError family, OSError)
    become a single error event.
    """
    if args.command not in COMMANDS:
        available = ", ".join(COMMANDS.keys())
        yield {"type": "error", "text": f"Unknown command: {args.command}. Available: {available}"}
        return

    handler = COMMANDS[args.command]["handler"]
    try:
        yield from handler(args)
    except (ValueError, OSError) as e:
        yield {"type": "error", "text": str(e)}
    except Exception as e:
        yield {"type": "error", "text": f"Command failed: {e!r}"}


def exit_code(events_seen: set[str]) -> int:
    """Errors beat violations beat success."""
    if "error" in events_seen:
        return EXIT_USAGE
    if "violation" in events_seen:
        return EXIT_VIOLATION
    return EXIT_OK


# Import command modules to register them
from . import bounds
from . import ric
from . import recover
from . import gen
from . import verify_lemmas
from . import montecarlo
