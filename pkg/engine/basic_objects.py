import json
import re

from exactnum.errors import UsageError


def _normalize(verdict):
    return re.sub(r"[^a-z]", "", str(verdict).lower())


class Command:
    """
    One subcommand. The engine calls update() to compute a result and draw()
    to turn it into output text.
    """

    name = None
    help = ""
    # verdict names accepted by --expect; empty when the command issues none
    verdicts = ()

    def add_arguments(self, parser):
        if self.verdicts:
            parser.add_argument("--expect", metavar="VERDICT",
                                help="exit 1 unless the verdict is VERDICT (one of: "
                                     + ", ".join(self.verdicts) + ")")

    def validate(self, config):
        """
        Checks flag combinations before any computation starts.

        Raises:
            UsageError: for an --expect value that is not one of `verdicts`.
        """
        expected = getattr(config, "expect", None)
        if expected is not None and _normalize(expected) not in {_normalize(v) for v in self.verdicts}:
            raise UsageError(f"--expect must be one of {', '.join(self.verdicts)}, got {expected!r}")

    def update(self, config):
        """
        Runs the computation.

        Returns:
            The result object handed to draw().
        """
        raise NotImplementedError

    def draw(self, result, config):
        """Renders the result as text, or as canonical JSON with --json."""
        if config.json:
            return json.dumps(self.to_json(result, config), sort_keys=True, indent=2)
        return "\n".join(self.lines(result, config))

    def lines(self, result, config):
        raise NotImplementedError

    def to_json(self, result, config):
        return result.to_json()

    def verdict(self, result):
        return getattr(result, "verdict", None)

    def meets_expectation(self, result, expected):
        return _normalize(self.verdict(result)) == _normalize(expected)
