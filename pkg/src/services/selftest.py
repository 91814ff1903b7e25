"""
Suites de propiedades ejecutables desde la CLI (comando selftest).

Cada suite recorre instancias aleatorias reproducibles y cuenta cuántas
verificaciones fallan; los fallos se reportan, no se lanzan.
"""
import concurrent.futures
import logging
from typing import Callable, Dict, List

import numpy as np

from ..config import Config
from ..models.schemas import (
    BipartiteShape,
    DensityMatrix,
    SelfTestReport,
    Subsystem,
    Suite,
    SuiteResult,
)
from ..utils.linalg import (
    hermitian_eigenvalues,
    partial_transpose_a,
    partial_transpose_b,
    realign,
    trace_norm,
)
from . import convex_roof, criteria, isotropic, monotone, states, superposition
from .convex_roof import ConvexRoofEstimator

# Configurar logging
logger = logging.getLogger(__name__)

# Número máximo de mensajes de fallo por suite
MAX_MESSAGES = 10

LEMMA1_SHAPES = [(2, 2), (2, 3), (3, 3)]
LEMMA1_EXPONENTS = [2.0, 2.5, 3.0, 4.0]
IDENTITY_SHAPES = [(2, 2), (2, 3), (3, 3), (3, 4)]
PAIR_SHAPES = [(2, 2), (2, 3), (3, 3), (3, 4)]
ROOF_SAMPLES = 100
ROOF_EXPONENTS = [2.0, 3.0]
ROOF_ITERATIONS = 300


class _Counter:
    """Acumula verificaciones de una suite."""

    def __init__(self, name: str):
        self.result = SuiteResult(name=name)

    def check(self, condition: bool, message: str) -> None:
        self.result.checked += 1
        if not condition:
            self.result.failures += 1
            if len(self.result.messages) < MAX_MESSAGES:
                self.result.messages.append(message)


class SelfTestService:
    """
    Servicio que ejecuta las suites de propiedades.
    """

    def __init__(self, seed: int = None, tol: float = None, workers: int = None):
        """
        Args:
            seed: semilla raíz (default Config.SEED)
            tol: tolerancia de las desigualdades (default Config.get_tolerance())
            workers: hilos para correr suites en paralelo
        """
        self.seed = Config.SEED if seed is None else seed
        self.tol = Config.get_tolerance() if tol is None else tol
        self.workers = workers or Config.WORKERS
        self.suites: Dict[Suite, Callable[[np.random.Generator], SuiteResult]] = {
            Suite.LEMMA1: self.run_lemma1,
            Suite.CRITERIA: self.run_criteria,
            Suite.ISOTROPIC: self.run_isotropic,
            Suite.SUPERPOSITION: self.run_superposition,
            Suite.ROOF: self.run_roof,
        }

    def run(self, suite: Suite = Suite.ALL) -> SelfTestReport:
        """
        Ejecuta una suite o todas.

        Args:
            suite: suite a ejecutar

        Returns:
            SelfTestReport con los resultados en orden fijo
        """
        selected = list(self.suites) if Suite(suite) == Suite.ALL else [Suite(suite)]
        # Cada suite recibe su propia semilla, derivada siempre en el mismo orden
        children = dict(zip(self.suites, np.random.SeedSequence(self.seed).spawn(len(self.suites))))
        logger.info(f"Ejecutando suites {[s.value for s in selected]} con semilla {self.seed}")

        results: List[SuiteResult] = [None] * len(selected)
        with concurrent.futures.ThreadPoolExecutor(max_workers=self.workers) as executor:
            futures = {
                executor.submit(self.suites[name], np.random.default_rng(children[name])): idx
                for idx, name in enumerate(selected)
            }
            for fut in concurrent.futures.as_completed(futures):
                results[futures[fut]] = fut.result()

        for result in results:
            level = logging.INFO if result.passed else logging.WARNING
            logger.log(level, f"Suite {result.name}: {result.checked} verificaciones, {result.failures} fallos")
        return SelfTestReport(seed=self.seed, suites=results)

    # =========================================================================
    # SUITES
    # =========================================================================
    def run_lemma1(self, rng: np.random.Generator) -> SuiteResult:
        counter = _Counter(Suite.LEMMA1.value)
        for i in range(500):
            shape = BipartiteShape(dim_a=LEMMA1_SHAPES[i % 3][0], dim_b=LEMMA1_SHAPES[i % 3][1])
            q = LEMMA1_EXPONENTS[i % len(LEMMA1_EXPONENTS)]
            rank = int(rng.integers(1, shape.total + 1))
            rho = states.random_density_matrix(shape, rank, rng)
            report = monotone.check_lemma1(rho, q, self.tol)
            counter.check(report.passed, f"Predicados de F_q fallan en {shape.as_list()}, q={q}, rango={rank}")

            # Estados puros: simetría y ambas desigualdades ajustadas
            pure = states.random_pure_state(shape, rng).to_density_matrix()
            pure_report = monotone.check_lemma1(pure, q, self.tol)
            counter.check(
                pure_report.passed and abs(pure_report.lower_gap) <= 1e-9 and pure_report.f_ab <= 1e-9,
                f"Caso puro de los predicados de F_q falla en {shape.as_list()}, q={q}"
            )

            # Ensambles aleatorios
            size = int(rng.integers(2, 5))
            rhos = [states.random_density_matrix(shape, int(rng.integers(1, shape.total + 1)), rng)
                    for _ in range(size)]
            probs = rng.dirichlet(np.ones(size))
            concavity = monotone.check_concavity(rhos, probs, q, self.tol)
            counter.check(concavity.passed, f"Concavidad falla en {shape.as_list()}, q={q}")

        # Casos de igualdad
        for i in range(20):
            shape = BipartiteShape(dim_a=2, dim_b=3)
            q = LEMMA1_EXPONENTS[i % len(LEMMA1_EXPONENTS)]
            rho = states.random_density_matrix(shape, shape.total, rng)
            same = monotone.check_concavity([rho, rho, rho], [0.2, 0.3, 0.5], q, self.tol)
            counter.check(abs(same.concavity_gap) <= 1e-12, "Igualdad de concavidad falla")

            basis = np.eye(shape.total)
            projectors = [DensityMatrix(matrix=np.outer(basis[j], basis[j]), shape=shape) for j in range(3)]
            probs = rng.dirichlet(np.ones(3))
            orthogonal = monotone.check_concavity(projectors, probs, q, self.tol)
            counter.check(abs(orthogonal.quasi_convexity_gap) <= 1e-12, "Igualdad de cuasi-convexidad falla")
        return counter.result

    def run_criteria(self, rng: np.random.Generator) -> SuiteResult:
        counter = _Counter(Suite.CRITERIA.value)
        for i in range(200):
            dims = IDENTITY_SHAPES[i % len(IDENTITY_SHAPES)]
            shape = BipartiteShape(dim_a=dims[0], dim_b=dims[1])
            psi = states.random_pure_state(shape, rng)
            rho = psi.projector()
            expected = float(np.sum(np.sqrt(states.schmidt(psi).coefficients))) ** 2
            ppt = trace_norm(partial_transpose_a(rho, shape))
            realigned = trace_norm(realign(rho, shape))
            counter.check(
                abs(ppt - expected) <= 1e-9 and abs(realigned - expected) <= 1e-9,
                f"Identidad de normas falla en {dims}: {ppt:.12f}, {realigned:.12f}, {expected:.12f}"
            )

            pt = partial_transpose_a(rho, shape)
            eig_norm = float(np.sum(np.abs(hermitian_eigenvalues(pt).as_array())))
            counter.check(abs(eig_norm - ppt) <= 1e-10, "Norma por autovalores y por valores singulares difieren")
            counter.check(
                np.array_equal(partial_transpose_a(pt, shape), rho),
                "La transpuesta parcial no es una involución"
            )
            counter.check(
                abs(trace_norm(partial_transpose_b(rho, shape)) - ppt) <= 1e-10,
                "‖ρ^{T_A}‖₁ y ‖ρ^{T_B}‖₁ difieren"
            )

            q = [2.0, 3.0, 4.0][i % 3]
            bound = criteria.q_concurrence_lower_bound(psi.to_density_matrix(), q)
            exact = monotone.q_concurrence_pure(psi, q)
            counter.check(bound <= exact + 1e-9, f"Cota {bound:.9f} supera C_q {exact:.9f} en {dims}")

        for m in (2, 3, 4):
            for q in (2.0, 3.0, 4.0):
                rho = states.maximally_entangled(m).to_density_matrix()
                bound = criteria.q_concurrence_lower_bound(rho, q)
                counter.check(abs(bound - (1.0 - m ** (1 - q))) <= 1e-9, f"Saturación falla en m={m}, q={q}")
        return counter.result

    def run_isotropic(self, rng: np.random.Generator) -> SuiteResult:
        counter = _Counter(Suite.ISOTROPIC.value)
        for d in range(2, 7):
            for q in (2.0, 3.0, 4.0):
                for fidelity in np.linspace(1.0 / d, 1.0, 51)[1:]:
                    a = isotropic.xi(float(fidelity), q, d)
                    b = isotropic.xi_oracle(float(fidelity), q, d)
                    counter.check(abs(a - b) <= 1e-9, f"Oráculo difiere en d={d}, q={q}, F={fidelity:.6f}")

        curve = isotropic.envelope(2.0, 2, 2001)
        for fidelity, value in curve.grid:
            counter.check(
                abs(value - isotropic.c2_isotropic_closed_form(fidelity, 2)) <= 1e-6,
                f"Envolvente d=2 difiere en F={fidelity:.6f}"
            )

        for d in range(3, 11):
            curve = isotropic.envelope(2.0, d, 2001)
            threshold = 4.0 * (d - 1) / d ** 2
            for fidelity, value in curve.grid:
                bound = isotropic.isotropic_lower_bound(fidelity, 2.0, d)
                counter.check(bound <= value + 1e-6, f"Cota supera la envolvente en d={d}, F={fidelity:.6f}")
                if fidelity >= threshold:
                    linear = (d * fidelity - d) / (d - 1) + (d - 1) / d
                    counter.check(abs(value - linear) <= 1e-5, f"Tramo lineal difiere en d={d}, F={fidelity:.6f}")
        return counter.result

    def run_superposition(self, rng: np.random.Generator) -> SuiteResult:
        counter = _Counter(Suite.SUPERPOSITION.value)
        for i in range(200):
            dims = PAIR_SHAPES[i % len(PAIR_SHAPES)]
            shape = BipartiteShape(dim_a=dims[0], dim_b=dims[1])
            q = [2.0, 3.0, 4.0][i % 3]

            data = superposition.random_bi_orthogonal_pair(shape, rng)
            gamma, _, _, _ = superposition.superpose(data)
            exact = monotone.q_concurrence_pure(gamma, q)
            rhs = superposition.theorem2_value(data, q, self.tol)
            counter.check(abs(exact - rhs) <= 1e-10, f"Igualdad bi-ortogonal falla en {dims}, q={q}")
            counter.check(superposition.delta_cq(data, q) <= 1.0 + 1e-9, "ΔC_q supera 1 (bi-ortogonal)")

            side = Subsystem.B if i % 2 == 0 else Subsystem.A
            data = superposition.random_one_sided_pair(shape, side, rng)
            gamma, _, _, _ = superposition.superpose(data)
            exact = monotone.q_concurrence_pure(gamma, q)
            rhs = superposition.theorem3_value(data, q, self.tol)
            counter.check(abs(exact - rhs) <= 1e-10, f"Igualdad de un lado falla en {dims}, q={q}")
            counter.check(superposition.delta_cq(data, q) <= 1.0 + 1e-9, "ΔC_q supera 1 (un lado)")
            f_a, f_b = superposition.mixture_marginal_f(data, q)
            counter.check(
                monotone.h_q(abs(data.alpha) ** 2, q) >= abs(f_a - f_b) - 1e-10,
                "h_q(|α|²) menor que la brecha de marginales"
            )

        for i in range(500):
            dims = PAIR_SHAPES[i % len(PAIR_SHAPES)]
            shape = BipartiteShape(dim_a=dims[0], dim_b=dims[1])
            q = [2.0, 3.0, 4.0][i % 3]
            data = superposition.random_general_pair(shape, rng)
            gamma, _, _, _ = superposition.superpose(data)
            exact = monotone.q_concurrence_pure(gamma, q)
            simple, refined = superposition.theorem4_bounds(data, q, self.tol)
            counter.check(exact <= simple + 1e-9, f"Cota simple violada en {dims}, q={q}")
            if refined is not None:
                counter.check(exact <= refined + 1e-9, f"Cota refinada violada en {dims}, q={q}")
        return counter.result

    def run_roof(self, rng: np.random.Generator) -> SuiteResult:
        counter = _Counter(Suite.ROOF.value)
        shape = BipartiteShape(dim_a=2, dim_b=2)

        # Instancias generadas en orden fijo antes de repartirlas entre hilos
        tasks = []
        for _ in range(ROOF_SAMPLES):
            rho = states.random_density_matrix(shape, int(rng.integers(1, 5)), rng)
            for q in ROOF_EXPONENTS:
                tasks.append((rho, q, int(rng.integers(0, 2 ** 31))))

        def _sandwich(task) -> List[str]:
            rho, q, seed = task
            estimator = ConvexRoofEstimator(q, iterations=ROOF_ITERATIONS, restarts=2, seed=seed, workers=1)
            estimate = estimator.estimate(rho)
            bound = criteria.q_concurrence_lower_bound(rho, q)
            failures = []
            if bound > estimate.value + 1e-6:
                failures.append(f"Cota {bound:.6f} supera la estimación {estimate.value:.6f} (q={q})")
            if estimate.reconstruction_error > 1e-8:
                failures.append(f"La descomposición no reconstruye ρ (q={q})")
            if any(b > a + 1e-15 for a, b in zip(estimate.trace, estimate.trace[1:])):
                failures.append(f"La traza del mejor valor no es monótona (q={q})")
            return failures

        outcomes: List[List[str]] = [None] * len(tasks)
        with concurrent.futures.ThreadPoolExecutor(max_workers=self.workers) as executor:
            futures = {executor.submit(_sandwich, task): idx for idx, task in enumerate(tasks)}
            for fut in concurrent.futures.as_completed(futures):
                outcomes[futures[fut]] = fut.result()

        for failures in outcomes:
            counter.check(not failures, '; '.join(failures))

        psi = states.random_pure_state(shape, rng)
        estimate = convex_roof.roof_estimate(psi.to_density_matrix(), 2.0, iterations=50, seed=1, restarts=1)
        counter.check(
            abs(estimate.value - monotone.q_concurrence_pure(psi, 2.0)) <= 1e-9,
            "El estimador no es exacto en estados puros"
        )
        return counter.result
