import json
import time

import pytest

from cli.io import dumps
from cli.main import EXIT_OK, run
from cli.repro import CRITERIA, run_repro
from cones.library import cross_polytope_cone, cube_cone, prism_cone
from dim3lab import build_omega, entangle_3d
from retractlab import certify_entangleable_polyhedral
from tensorcone import SeparationCertificate, nuclearity_bruteforce, verify_certificate
from utils.config import get_toolkit_config_defaults


@pytest.fixture
def quick_config():
    config = get_toolkit_config_defaults()
    config['sampling']['psd_samples'] = 100
    config['repro'].update({'omega_instances': 100, 'polygon_pairs': 3, 'easy_direction_cones': 5,
                            'norm_instances': 12, 'monotonicity_instances': 8})
    return config


@pytest.mark.integration
class TestPipelines:
    """Cone pairs through the whole certification stack."""

    def test_reproduction_suite(self, quick_config):
        results = run_repro(quick_config)
        failures = [r for r in results if not r["passed"]]
        assert not failures, failures
        assert results.total == len(CRITERIA)

    @pytest.mark.parametrize("first,second", [
        (cube_cone(3), cube_cone(3)),
        (cross_polytope_cone(3), cube_cone(3)),
        (prism_cone([(0, 0), (1, 0), (0, 1)]), cube_cone(3)),
    ])
    def test_four_dimensional_pairs(self, first, second):
        cert = certify_entangleable_polyhedral(first, second)
        assert cert.separation_value < 0
        assert verify_certificate(cert, first, second)
        restored = SeparationCertificate.from_dict(json.loads(dumps(cert.to_dict())))
        assert verify_certificate(restored, first, second)

    def test_bruteforce_agrees_with_the_descent(self, square, hexagon):
        assert not nuclearity_bruteforce(square, hexagon).nuclear
        assert verify_certificate(entangle_3d(square, hexagon), square, hexagon)

    def test_certify_then_verify_from_the_command_line(self, write_doc, tmp_path, cross_polytope, square):
        a = write_doc("a.json", cross_polytope.to_dict())
        b = write_doc("b.json", square.to_dict())
        cert = str(tmp_path / "cert.json")
        assert run(["certify", "--a", a, "--b", b, "--out", cert]) == EXIT_OK
        assert run(["verify", "--cert", cert, "--a", a, "--b", b]) == EXIT_OK


@pytest.mark.performance
class TestPerformance:
    def test_omega_identity_throughput(self, rational_sampler):
        start = time.perf_counter()
        for _ in range(1000):
            w = build_omega(*(rational_sampler() for _ in range(4))).matrix
            assert w[0][0] + w[0][1] + w[1][0] - w[1][1] == 2 * w[2][2]
        assert time.perf_counter() - start < 10.0

    def test_square_pair_certificate_time(self, square):
        start = time.perf_counter()
        entangle_3d(square, square)
        assert time.perf_counter() - start < 5.0
