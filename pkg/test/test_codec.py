import pytest

from exactnum.backend import rational
from exactnum.cyclotomic import CycloElem
from exactnum.errors import UsageError
from modforms.eisenstein import j_series
from qseries import codec
from qseries.series import FracQSeries


def test_j_text_form():
    assert codec.to_text(j_series(2)) == "q^-1 + 744 + 196884*q + O(q^2)"


def test_fractional_and_cyclotomic_terms():
    s = FracQSeries.from_terms({rational(-1, 2): CycloElem.zeta(3), 0: rational(-1, 4)}, 1)
    text = codec.to_text(s)
    assert text == "[M=3,D=2] (z)*q^(-1/2) - 1/4 + O(q)"
    assert codec.from_text(text) == s


def test_zero_series_text():
    assert codec.to_text(FracQSeries.zero(0)) == "O(1)"
    assert codec.from_text("O(q^3)").is_zero_to_precision()


def test_json_form_is_lossless():
    s = FracQSeries.from_terms({0: 1, rational(1, 3): CycloElem(3, [2, -1])}, 2)
    data = codec.to_json(s)
    assert data["exp_den"] == 3
    assert data["exponents"] == ["0", "1/3"]
    assert codec.from_json(data) == s


@pytest.mark.parametrize("text", ["1 + q", "1 + q^x + O(q)", "q + q + O(q^2)", "(z + O(q)"])
def test_malformed_text(text):
    with pytest.raises(UsageError):
        codec.from_text(text)
