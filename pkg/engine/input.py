import argparse

from exactnum.errors import UsageError


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that reports bad flags as UsageError instead of exiting."""

    def error(self, message):
        raise UsageError(message)


class CliConfig:
    """
    Parsed flags merged over the Settings defaults.

    Every attribute the commands read is present, so a run depends on its
    flags and the environment-derived Settings only.
    """

    def __init__(self, namespace, settings):
        self.settings = settings
        self.command = namespace.command
        for key, value in vars(namespace).items():
            setattr(self, key, value)
        self.trunc_given = getattr(namespace, "terms", None) is not None
        self.terms = namespace.terms if self.trunc_given else settings.trunc
        self.prec_bits = getattr(namespace, "prec_bits", None) or settings.prec_bits
        tol = getattr(namespace, "tol", None)
        self.tol = settings.tol if tol is None else tol
        workers = getattr(namespace, "workers", None)
        self.workers = settings.workers if workers is None else workers
        self.integrality_tol = settings.integrality_tol
        self.zero_tol = settings.zero_tol
        self.max_level = settings.max_level
        if self.terms <= 0:
            raise UsageError(f"--terms must be positive, got {self.terms}")
        if self.workers < 1:
            raise UsageError(f"--workers must be positive, got {self.workers}")

    def header(self):
        return (f"{self.command}: T={self.terms} prec_bits={self.prec_bits} tol={self.tol:g} "
                f"integrality_tol={self.integrality_tol:g} zero_tol={self.zero_tol:g} "
                f"max_level={self.max_level} workers={self.workers} backend={self.settings.backend}")


class InputManager:
    """
    Builds the argument parser from the registered commands and turns argv
    into a CliConfig.
    """

    def __init__(self, prog="fricke"):
        self.parser = _Parser(prog=prog, description="Exact q-expansions, primitivity "
                              "certificates, modular curve models and CM values of Fricke families.")
        self.common = _Parser(add_help=False)
        self.common.add_argument("--json", action="store_true", help="emit JSON instead of text")
        self.common.add_argument("--out", metavar="FILE", help="write the result to FILE")
        self.common.add_argument("-v", "--verbose", action="store_true", help="log at DEBUG")
        self.common.add_argument("-q", "--quiet", action="store_true", help="log warnings only")
        self.subparsers = self.parser.add_subparsers(dest="command", metavar="COMMAND")
        self.subparsers.required = True

    def register(self, command):
        sub = self.subparsers.add_parser(command.name, parents=[self.common], help=command.help,
                                         description=command.help)
        command.add_arguments(sub)
        return sub

    def parse(self, argv, settings):
        """
        Raises:
            UsageError: on unknown commands, bad flags or invalid values.
        """
        namespace = self.parser.parse_args(argv)
        if namespace.verbose and namespace.quiet:
            raise UsageError("-v and -q are mutually exclusive")
        return CliConfig(namespace, settings)
