import logging
import sys

from exactnum.errors import FrickeError, UsageError, PrecisionError
from settings import Settings

from .input import InputManager

log = logging.getLogger(__name__)

# Exit codes
EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_PRECISION = 3


class Engine:
    """
    Parses argv, runs one registered command and writes its output.

    Args:
        settings (Settings): Defaults; read from the environment when None.
        stdout, stderr: Streams for results and error messages; the process
            streams at call time when None.
    """

    def __init__(self, settings=None, stdout=None, stderr=None):
        self.settings = settings
        self.stdout = stdout
        self.stderr = stderr
        self.input_manager = InputManager()
        self.objects = {}

    def add_object(self, command):
        self.objects[command.name] = command
        self.input_manager.register(command)

    def _error(self, exc):
        print(f"error: {exc}", file=self.stderr or sys.stderr)

    def _emit(self, text, path):
        if path:
            with open(path, "w", encoding="utf-8") as f:
                f.write(text + "\n")
        else:
            print(text, file=self.stdout or sys.stdout)

    @staticmethod
    def _set_verbosity(config):
        level = logging.DEBUG if config.verbose else logging.WARNING if config.quiet else logging.INFO
        logging.getLogger().setLevel(level)

    def run(self, argv):
        """
        Returns:
            int: EXIT_OK, EXIT_NEGATIVE (negative verdict under --expect, or a
            library error), EXIT_USAGE or EXIT_PRECISION.
        """
        try:
            settings = self.settings or Settings()
            config = self.input_manager.parse(argv, settings)
            command = self.objects[config.command]
            command.validate(config)
        except UsageError as exc:
            self._error(exc)
            return EXIT_USAGE
        except SystemExit as exc:
            # --help
            return exc.code or EXIT_OK

        self._set_verbosity(config)
        log.info(config.header())
        try:
            result = command.update(config)
            text = command.draw(result, config)
        except UsageError as exc:
            self._error(exc)
            return EXIT_USAGE
        except PrecisionError as exc:
            self._error(exc)
            return EXIT_PRECISION
        except FrickeError as exc:
            self._error(exc)
            return EXIT_NEGATIVE
        self._emit(text, config.out)

        expected = getattr(config, "expect", None)
        if expected is not None and not command.meets_expectation(result, expected):
            log.warning("verdict %s, expected %s", command.verdict(result), expected)
            return EXIT_NEGATIVE
        return EXIT_OK
