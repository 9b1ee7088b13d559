import logging
import sys

from engine.commands import COMMANDS
from engine.core import Engine


def build_engine(settings=None, stdout=None, stderr=None):
    engine = Engine(settings=settings, stdout=stdout, stderr=stderr)
    for command in COMMANDS:
        engine.add_object(command())
    return engine


if __name__ == "__main__":
    logging.basicConfig(stream=sys.stderr, level=logging.INFO,
                        format="%(levelname)s %(name)s: %(message)s")
    sys.exit(build_engine().run(sys.argv[1:]))
