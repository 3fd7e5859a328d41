import numpy as np
import pytest

from sectornet import (
    absolute_matrix,
    elementwise_power,
    pearson_correlation,
)
from sectornet.core import CorrelationNet, SectorId
from sectornet.errors import DegenerateSeriesError, DomainError, InvalidExponentError
from sectornet.network import read_matrix_csv, write_matrix_csv

from helpers import make_panel, pearson_two_pass


def two_sector_panel(x, y):
    return make_panel(np.column_stack([x, y]))


def test_identical_series_perfectly_correlated():
    net = pearson_correlation(two_sector_panel([0.1, -0.2, 0.3], [0.1, -0.2, 0.3]))
    assert net.rho[0, 1] == pytest.approx(1.0, abs=1e-14)
    assert net.dist[0, 1] == pytest.approx(0.0, abs=1e-7)


def test_negated_series_anticorrelated():
    net = pearson_correlation(two_sector_panel([0.1, -0.2, 0.3], [-0.1, 0.2, -0.3]))
    assert net.rho[0, 1] == pytest.approx(-1.0, abs=1e-14)
    assert net.dist[0, 1] == pytest.approx(2.0, abs=1e-7)


def test_hand_checked_pair():
    # rho for x=[1,2,3], y=[1,2,4] is sqrt(27/28); d follows from the transform
    net = pearson_correlation(two_sector_panel([1.0, 2.0, 3.0], [1.0, 2.0, 4.0]))
    rho = np.sqrt(27.0 / 28.0)
    assert net.rho[0, 1] == pytest.approx(rho, abs=1e-12)
    assert net.dist[0, 1] == pytest.approx(np.sqrt(2 * (1 - rho)), abs=1e-12)


def test_rejects_short_window_and_wrong_kind():
    with pytest.raises(DomainError):
        pearson_correlation(two_sector_panel([0.1, 0.2], [0.1, 0.3]))
    from sectornet import PanelKind

    prices = make_panel(np.full((5, 2), 100.0), kind=PanelKind.PRICES)
    with pytest.raises(DomainError):
        pearson_correlation(prices)


def test_zero_variance_sector_reported_by_code():
    panel = make_panel(
        np.column_stack([[0.0, 0.0, 0.0], [0.1, 0.2, 0.3]]), codes=["FN", "IT"]
    )
    with pytest.raises(DegenerateSeriesError) as err:
        pearson_correlation(panel)
    assert err.value.sector_code == "FN"


def test_matches_two_pass_oracle():
    rng = np.random.default_rng(11)
    for _ in range(20):
        r = 0.01 * rng.standard_normal((100, 5))
        net = pearson_correlation(make_panel(r))
        assert np.max(np.abs(net.rho - pearson_two_pass(r))) <= 1e-12


def test_permutation_equivariance():
    rng = np.random.default_rng(5)
    r = 0.01 * rng.standard_normal((60, 4))
    perm = [2, 0, 3, 1]
    base = pearson_correlation(make_panel(r)).rho
    permuted = pearson_correlation(make_panel(r[:, perm])).rho
    assert np.max(np.abs(permuted - base[np.ix_(perm, perm)])) <= 1e-14


def test_distance_bounds_hold():
    rng = np.random.default_rng(9)
    r = 0.01 * rng.standard_normal((50, 6))
    net = pearson_correlation(make_panel(r))
    assert (net.dist >= 0).all() and (net.dist <= 2).all()


def sample_net(rho):
    rho = np.asarray(rho, dtype=float)
    sectors = tuple(SectorId(code=f"S{i}") for i in range(rho.shape[0]))
    return CorrelationNet(sectors=sectors, rho=rho)


class TestElementwisePower:
    def test_even_power_kills_sign(self):
        net = sample_net([[1.0, -0.5], [-0.5, 1.0]])
        assert elementwise_power(net, 2)[0, 1] == 0.25

    def test_unit_entry_fixed(self):
        net = sample_net([[1.0, 1.0], [1.0, 1.0]])
        assert (elementwise_power(net, 32) == 1.0).all()

    def test_default_exponent(self):
        net = sample_net([[1.0, 0.9], [0.9, 1.0]])
        assert elementwise_power(net)[0, 1] == pytest.approx(0.9**32, rel=1e-15)

    @pytest.mark.parametrize("c", [0, -2, 3, 2.0])
    def test_invalid_exponent(self, c):
        net = sample_net([[1.0, 0.5], [0.5, 1.0]])
        with pytest.raises(InvalidExponentError):
            elementwise_power(net, c)

    def test_monotone_in_absolute_value(self):
        rng = np.random.default_rng(2)
        rho = np.clip(rng.uniform(-1, 1, (6, 6)), -1, 1)
        rho = (rho + rho.T) / 2
        np.fill_diagonal(rho, 1.0)
        net = sample_net(rho)
        powered = elementwise_power(net, 4)
        flat_abs = np.abs(rho).ravel()
        flat_pow = powered.ravel()
        order = np.argsort(flat_abs)
        assert (np.diff(flat_pow[order]) >= -1e-15).all()


def test_absolute_matrix():
    net = sample_net([[1.0, -0.3, 0.2], [-0.3, 1.0, -0.9], [0.2, -0.9, 1.0]])
    out = absolute_matrix(net)
    assert out[0, 1] == 0.3
    assert out[1, 2] == 0.9
    assert (np.diag(out) == 1.0).all()
    ident = sample_net(np.eye(3))
    assert (absolute_matrix(ident) == np.eye(3)).all()


def test_matrix_csv_round_trip(tmp_path):
    rng = np.random.default_rng(1)
    m = rng.standard_normal((3, 3))
    write_matrix_csv(tmp_path / "m.csv", ["A", "B", "C"], m)
    codes, back = read_matrix_csv(tmp_path / "m.csv")
    assert codes == ["A", "B", "C"]
    assert (back == m).all()
