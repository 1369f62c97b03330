"""
Командная строка: подкоманды qinfo, bound, channel, bh, gedanken, curve, verify.

Числовые флаги принимают голые числа (в системе --units) или литералы с суффиксом
(1cm, 2kg, 1solar-mass). Результат пишется в stdout таблицей, json-lines или csv;
ошибки пишутся одной JSON-записью в stderr.
"""
import argparse
import csv
import difflib
import io
import json
import logging
import math
import re
import sys
from pathlib import Path
from typing import Callable, List, Optional, Sequence, TextIO, Tuple

from pydantic import BaseModel, ValidationError

import blackhole
import bounds
import channel
import gedanken
import qinfo
import verification
from config import DEFAULT_ZETA, MACHINE_DIGITS, SPECIES_CAP, TABLE_DIGITS
from errors import AuditViolation, DomainError, InfoBoundError, MatrixError, QuadratureError, UsageError
from numerics import eigvals_hermitian, logspace_points
from units import (
    AREA, DIMENSIONLESS, ENERGY, LENGTH, LOG2E, MASS, POWER, RATE, TEMPERATURE, TIME, Dimension,
    Quantity, UnitSystem, from_internal, parse_literal, unit_label,
)

logger = logging.getLogger(__name__)

FORMATS = ("table", "json-lines", "csv")
CURVES = ("pendry", "blackbody3d", "blackbody2d", "blackhole")
GENERIC_SPECIES = "generic"
CSV_COLUMNS = ["quantity", "value", "unit", "system", "entropy_unit", "note"]


# ==================== ЗАПИСИ ВЫВОДА ====================

class Record(BaseModel):
    quantity: str
    value: float
    unit: str
    system: str
    entropy_unit: str = ""
    note: str = ""
    nats: Optional[float] = None
    bits: Optional[float] = None


class Renderer:
    """Перевод Quantity во внешнюю систему и форматирование записей"""

    def __init__(self, system: UnitSystem, entropy_unit: qinfo.EntropyUnit, fmt: str):
        self.system = UnitSystem(system)
        self.entropy_unit = qinfo.EntropyUnit(entropy_unit)
        self.fmt = fmt

    def record(self, name: str, q, entropy: Optional[str] = None, note: str = "") -> Record:
        """entropy=None: не энтропия; "nats": переводится по --bits/--nats; "bits": всегда биты"""
        if not isinstance(q, Quantity):
            q = Quantity(value=float(q), dimension=DIMENSIONLESS)
        value = from_internal(q, self.system)
        entropy_unit = ""
        if entropy == "nats":
            entropy_unit = self.entropy_unit.value
            if self.entropy_unit is qinfo.EntropyUnit.BITS:
                value *= LOG2E
        elif entropy == "bits":
            entropy_unit = qinfo.EntropyUnit.BITS.value
        return Record(quantity=name, value=value, unit=unit_label(q.dimension, self.system),
                      system=self.system.value, entropy_unit=entropy_unit, note=note)

    def bound(self, result: bounds.BoundResult) -> Record:
        note = ",".join(result.warnings)
        if result.saturated is not None:
            note = ",".join(filter(None, [note, "saturated" if result.saturated else "below"]))
        record = self.record(result.bound_name, result.nats, entropy="nats", note=note)
        return record.model_copy(update={"nats": result.nats, "bits": result.bits})

    # ---- форматирование ----

    def machine(self, value: float) -> str:
        return f"{value:.{MACHINE_DIGITS - 1}e}"

    def write(self, records: Sequence[Record], out: TextIO) -> None:
        if self.fmt == "json-lines":
            for r in records:
                data = r.model_dump(exclude_none=True)
                for key in ("value", "nats", "bits"):
                    if key in data:
                        data[key] = float(self.machine(data[key]))
                out.write(json.dumps(data, ensure_ascii=False) + "\n")
        elif self.fmt == "csv":
            writer = csv.writer(out, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            for r in records:
                writer.writerow([r.quantity, self.machine(r.value), r.unit, r.system,
                                 r.entropy_unit, r.note])
        else:
            rows = [[r.quantity, f"{r.value:.{TABLE_DIGITS}g}", r.unit, r.entropy_unit, r.note]
                    for r in records]
            _write_table(["quantity", "value", "unit", "entropy", "note"], rows, out)

    def write_curve(self, rows: Sequence[Tuple[Quantity, Quantity]], out: TextIO) -> None:
        converted = []
        for power, rate in rows:
            value = from_internal(rate, self.system)
            if self.entropy_unit is qinfo.EntropyUnit.BITS:
                value *= LOG2E
            converted.append((from_internal(power, self.system), value))
        power_unit = unit_label(POWER, self.system)
        rate_unit = unit_label(RATE, self.system)
        if self.fmt == "json-lines":
            for p, s in converted:
                out.write(json.dumps({
                    "power": float(self.machine(p)), "entropy_rate": float(self.machine(s)),
                    "power_unit": power_unit, "rate_unit": rate_unit,
                    "system": self.system.value, "entropy_unit": self.entropy_unit.value,
                }) + "\n")
        elif self.fmt == "csv":
            writer = csv.writer(out, lineterminator="\n")
            writer.writerow(["power", "entropy_rate", "power_unit", "rate_unit", "system", "entropy_unit"])
            for p, s in converted:
                writer.writerow([self.machine(p), self.machine(s), power_unit, rate_unit,
                                 self.system.value, self.entropy_unit.value])
        else:
            _write_table([f"power [{power_unit}]", f"entropy_rate [{rate_unit}]"],
                         [[f"{p:.{TABLE_DIGITS}g}", f"{s:.{TABLE_DIGITS}g}"] for p, s in converted], out)


def _write_table(header: List[str], rows: List[List[str]], out: TextIO) -> None:
    widths = [max(len(str(c)) for c in column) for column in zip(header, *rows)]
    line = "  ".join(h.ljust(w) for h, w in zip(header, widths))
    out.write(line.rstrip() + "\n")
    out.write("  ".join("-" * w for w in widths) + "\n")
    for row in rows:
        out.write("  ".join(str(c).ljust(w) for c, w in zip(row, widths)).rstrip() + "\n")


# ==================== ВХОДНЫЕ ДАННЫЕ ====================

_PAIR = re.compile(r'^([-+]?[0-9.eE+-]+),([-+]?[0-9.eE+-]+)$')


def read_density_matrix(text: str) -> qinfo.DensityMatrix:
    """Формат: размерность d, затем d² пар "re,im" через пробельные символы"""
    tokens = text.split()
    if not tokens:
        raise MatrixError("empty density matrix input")
    try:
        d = int(tokens[0])
    except ValueError:
        raise MatrixError(f"first token must be the dimension, got '{tokens[0]}'")
    if d < 1:
        raise MatrixError(f"dimension must be positive, got {d}")
    pairs = tokens[1:]
    if len(pairs) != d * d:
        raise MatrixError(f"expected {d * d} entries for dimension {d}, got {len(pairs)}")
    entries = []
    for token in pairs:
        match = _PAIR.match(token)
        if not match:
            raise MatrixError(f"entry '{token}' is not of the form re,im")
        try:
            entries.append(complex(float(match.group(1)), float(match.group(2))))
        except ValueError:
            raise MatrixError(f"entry '{token}' is not numeric")
    return qinfo.DensityMatrix(entries=[entries[i * d:(i + 1) * d] for i in range(d)])


def _load_matrix(path: str) -> qinfo.DensityMatrix:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read matrix file '{path}': {e.strerror}")
    return read_density_matrix(text)


def _probabilities(text: str) -> List[float]:
    try:
        return [float(p) for p in text.split(",")]
    except ValueError:
        raise UsageError(f"--probs expects a comma-separated list of numbers, got '{text}'")


def _ensemble(members: Optional[List[str]]) -> qinfo.Ensemble:
    if not members:
        return qinfo.spin_half_ensemble()
    parsed = []
    for member in members:
        probability, sep, path = member.partition(":")
        if not sep:
            raise UsageError(f"--member expects P:FILE, got '{member}'")
        try:
            p = float(probability)
        except ValueError:
            raise UsageError(f"member probability '{probability}' is not a number")
        parsed.append(qinfo.EnsembleMember(probability=p, state=_load_matrix(path)))
    return qinfo.Ensemble(members=parsed)


def _q(args: argparse.Namespace, text: Optional[str], dimension: Dimension, flag: str) -> Quantity:
    if text is None:
        raise UsageError(f"missing required flag {flag}")
    return parse_literal(text, dimension, args.units)


# ==================== ОБРАБОТЧИКИ ====================

Handler = Callable[[argparse.Namespace, Renderer], List[Record]]


def _qinfo_entropy(args, r: Renderer) -> List[Record]:
    if (args.probs is None) == (args.matrix is None):
        raise UsageError("give exactly one of --probs or --matrix")
    if args.probs is not None:
        return [r.record("shannon_entropy", qinfo.shannon_entropy(_probabilities(args.probs)), "nats")]
    rho = _load_matrix(args.matrix)
    return [r.record("von_neumann_entropy", qinfo.von_neumann_entropy(rho), "nats")]


def _qinfo_mix(args, r: Renderer) -> List[Record]:
    rho = qinfo.mix_ensemble(_ensemble(args.member))
    records = [r.record(f"eigenvalue_{i}", float(v))
               for i, v in enumerate(eigvals_hermitian(rho.entries))]
    records.append(r.record("von_neumann_entropy", qinfo.von_neumann_entropy(rho), "nats"))
    records.append(r.record("purity", qinfo.purity(rho)))
    return records


def _qinfo_holevo(args, r: Renderer) -> List[Record]:
    ensemble = _ensemble(args.member)
    rho = qinfo.mix_ensemble(ensemble)
    naive = qinfo.naive_capacity(ensemble)
    cap = qinfo.accessible_info_bound(rho)
    records = [r.record("naive_capacity", naive, "bits"),
               r.record("accessible_info_bound", cap, "bits")]
    if cap > 0:
        records.append(r.record("capacity_ratio", naive / cap))
    return records


def _system(args) -> bounds.SystemSpec:
    return bounds.SystemSpec(E=_q(args, args.energy, ENERGY, "--energy"),
                             R=_q(args, args.radius, LENGTH, "--radius"), n=args.dimension)


def _bound_holographic(args, r: Renderer) -> List[Record]:
    area = None if args.area is None else parse_literal(args.area, AREA, args.units)
    radius = None if args.radius is None else parse_literal(args.radius, LENGTH, args.units)
    if (area is None) == (radius is None):
        raise UsageError("give exactly one of --area or --radius")
    return [r.bound(bounds.holographic_bound(area=area, radius=radius, n=args.dimension,
                                             entropy=args.entropy))]


def _bound_universal(args, r: Renderer) -> List[Record]:
    return [r.bound(bounds.universal_bound(_system(args), entropy=args.entropy))]


def _bound_poorman(args, r: Renderer) -> List[Record]:
    result = bounds.poor_man_bound(_system(args), args.nu, args.zeta,
                                   check_ranges=not args.no_range_check)
    return [r.bound(result),
            r.record("coefficient_4_nu_zeta", bounds.poor_man_coefficient(args.nu, args.zeta))]


def _bound_bousso(args, r: Renderer) -> List[Record]:
    s = _system(args)
    return [r.bound(bounds.bousso_bound(s)),
            r.record("gravitational_radius", bounds.gravitational_radius(s.E, s.n))]


def _bound_verlinde(args, r: Renderer) -> List[Record]:
    E = _q(args, args.energy, ENERGY, "--energy")
    R = _q(args, args.radius, LENGTH, "--radius")
    if args.casimir_energy is None:
        return [r.bound(bounds.verlinde_max(E, R, args.dimension))]
    v = bounds.VerlindeInput(E=E, E_C=parse_literal(args.casimir_energy, ENERGY, args.units),
                             R=R, n=args.dimension)
    return [r.bound(bounds.verlinde_bound(v))]


def _bound_kerr_newman(args, r: Renderer) -> List[Record]:
    k = bounds.KerrNewmanSpec(M=_q(args, args.mass, MASS, "--mass"),
                              a=parse_literal(args.spin, MASS, args.units),
                              Q=parse_literal(args.charge, MASS, args.units))
    check = bounds.kerr_newman_check(k)
    note = "saturated" if check.saturated else "below"
    return [
        r.record("horizon_entropy", check.entropy, "nats"),
        r.record("bound_2piMr", check.bound, "nats", note=note),
        r.record("horizon_radius", Quantity(value=check.horizon_radius, dimension=LENGTH)),
    ]


def _bound_compare(args, r: Renderer) -> List[Record]:
    comparison = bounds.tightest_bound(_system(args))
    records = [r.bound(comparison.universal)]
    if comparison.holographic is not None:
        records.append(r.bound(comparison.holographic))
        records.append(r.record("holographic_over_universal", comparison.ratio,
                                note=f"tighter={comparison.tighter}"))
    else:
        records[0] = records[0].model_copy(update={"note": comparison.note})
    return records


def _statistics(args) -> channel.Statistics:
    return channel.Statistics(args.statistics)


def _channel_pendry(args, r: Renderer) -> List[Record]:
    result = channel.pendry_rate(_q(args, args.power, POWER, "--power"), _statistics(args))
    return [r.record("entropy_rate", result.entropy_rate, "nats"),
            r.record("max_info_rate", result.info_rate, "bits")]


def _channel_blackbody(args, r: Renderer) -> List[Record]:
    measure_dim = {1: DIMENSIONLESS, 2: LENGTH, 3: AREA}.get(args.dimension)
    if measure_dim is None:
        raise UsageError(f"--dimension must be 1, 2 or 3, got {args.dimension}")
    measure = 1.0 if args.measure is None else parse_literal(args.measure, measure_dim, args.units).value
    e = channel.EmitterSpec(n=args.dimension, measure=measure,
                            temperature=_q(args, args.temperature, TEMPERATURE, "--temperature"))
    result = channel.blackbody_rate(e, _statistics(args))
    return [r.record("power", result.power),
            r.record("entropy_rate", result.entropy_rate, "nats"),
            r.record("entropy_rate_from_power", result.entropy_rate_from_power, "nats")]


def _channel_pulse(args, r: Renderer) -> List[Record]:
    pulse = channel.PulseSpec(E=_q(args, args.energy, ENERGY, "--energy"),
                              tau=_q(args, args.duration, TIME, "--duration"))
    if args.redshift is not None:
        pulse = channel.redshift_transform(pulse, args.redshift)
    result = channel.pulse_info_bound(pulse)
    regime = "linear" if result.linear <= result.steady else "steady"
    return [r.record("xi", pulse.xi),
            r.record("linear_bound", result.linear, "bits"),
            r.record("steady_bound", result.steady, "bits"),
            r.record("envelope", result.envelope, "bits", note=regime)]


def _dispersion(args) -> channel.Dispersion:
    if args.exponent is not None:
        return channel.Dispersion.power_law(args.exponent, args.speed)
    return channel.Dispersion.linear(args.speed)


def _channel_modes(args, r: Renderer) -> List[Record]:
    T = _q(args, args.temperature, TEMPERATURE, "--temperature")
    statistics = _statistics(args)
    records = []
    if args.energy is not None:
        eps = parse_literal(args.energy, ENERGY, args.units)
        records.append(r.record("mode_entropy", channel.mode_entropy(eps, T, statistics), "nats"))
    spec = channel.ChannelSpec(statistics=statistics, dispersion=_dispersion(args))
    records += [
        r.record("one_way_power", channel.one_way_power(spec, T, args.variable)),
        r.record("one_way_entropy_rate", channel.one_way_entropy_rate(spec, T, args.variable), "nats"),
        r.record("closed_form_power", channel.closed_form_power(T, statistics)),
        r.record("closed_form_entropy_rate", channel.closed_form_entropy_rate(T, statistics), "nats"),
    ]
    return records


def _hole(args) -> blackhole.BlackHole:
    return blackhole.BlackHole(M=_q(args, args.mass, MASS, "--mass"))


def _species(args) -> blackhole.SpeciesEmission:
    if args.species != GENERIC_SPECIES:
        return blackhole.species(args.species)
    if args.gamma_bar is None:
        raise UsageError("--species generic needs --gamma-bar")
    return blackhole.generic_species(args.statistics, args.gamma_bar, args.nu)


def _bh_temperature(args, r: Renderer) -> List[Record]:
    return [r.record("hawking_temperature", blackhole.hawking_temperature(_hole(args)))]


def _bh_entropy(args, r: Renderer) -> List[Record]:
    return [r.bound(blackhole.bh_entropy(_hole(args)))]


def _bh_flux(args, r: Renderer) -> List[Record]:
    bh = _hole(args)
    return [
        r.record("flux", blackhole.hawking_flux(_q(args, args.radius, LENGTH, "--radius"),
                                                bh, args.species_count)),
        r.record("luminosity", blackhole.luminosity(bh, args.species_count)),
    ]


def _bh_emission(args, r: Renderer) -> List[Record]:
    bh = _hole(args)
    s = _species(args)
    power = blackhole.emission_power(bh, s)
    return [
        r.record("emission_power", power),
        r.record("emission_entropy_rate", blackhole.emission_entropy_rate(bh, s), "nats"),
        r.record("entropy_rate_from_power", blackhole.bh_rate_vs_power(power, s), "nats"),
    ]


def _bh_ratio(args, r: Renderer) -> List[Record]:
    s = _species(args)
    quoted = blackhole.QUOTED_COEFFICIENT_RATIOS.get(s.name)
    note = f"quoted {quoted} not reproduced" if quoted is not None else ""
    return [r.record("rate_coefficient", blackhole.rate_coefficient(s)),
            r.record("coefficient_ratio", blackhole.coefficient_ratio(s), note=note)]


def _bh_channels(args, r: Renderer) -> List[Record]:
    area = None if args.area is None else parse_literal(args.area, AREA, args.units)
    count = blackhole.bh_channel_bound(_hole(args), _q(args, args.distance, LENGTH, "--distance"), area)
    return [r.record("channel_count", count)]


def _bh_dump(args, r: Renderer) -> List[Record]:
    if (args.power is None) == (args.rate is None):
        raise UsageError("give exactly one of --power or --rate")
    if args.power is not None:
        rate = blackhole.dump_rate(parse_literal(args.power, POWER, args.units), args.channels)
        return [r.record("max_info_rate", rate, "bits")]
    power = blackhole.power_for_rate(parse_literal(args.rate, RATE, args.units), args.channels)
    return [r.record("required_power", power)]


def _gedanken_audit(args, r: Renderer) -> List[Record]:
    if args.energy_radius_product is not None:
        if args.energy is not None or args.radius is not None:
            raise UsageError("--energy-radius-product excludes --energy and --radius")
        if args.energy_radius_product <= 0:
            raise DomainError("energy-radius product must be positive")
        # E = R = √(ER): аудит зависит только от произведения и ζ
        side = math.sqrt(args.energy_radius_product)
        E, R = Quantity(value=side, dimension=ENERGY), Quantity(value=side, dimension=LENGTH)
    else:
        E = _q(args, args.energy, ENERGY, "--energy")
        R = _q(args, args.radius, LENGTH, "--radius")
    cfg = gedanken.GedankenConfig(E=E, R=R, zeta=args.zeta, species_count=args.species_count,
                                  n_eff=args.n_eff)
    report = gedanken.audit(cfg)
    records = [
        r.record("M", Quantity(value=report.M, dimension=MASS)),
        r.record("T_H", Quantity(value=report.T_H, dimension=TEMPERATURE)),
        r.record("radiation_time", Quantity(value=report.t, dimension=TIME)),
        r.record("infall_distance", Quantity(value=report.d, dimension=LENGTH)),
        r.record("d_over_M", report.d_over_M),
        r.record("force_ratio", report.force_ratio_at_d),
        r.record("n_eff_cap", report.n_eff_cap),
    ]
    records += [r.record(f"flag_{f.name}", f.value, note="pass" if f.passed else "FAIL")
                for f in report.flags]
    records += [r.record(f"coefficient_{c.name}", c.exact,
                         note=f"rounded {c.rounded:g}, deviation {c.deviation:.2%}")
                for c in report.coefficients]
    args.audit_report = report
    return records


def _verify(args, r: Renderer) -> List[Record]:
    results = verification.run_checks()
    passed, total = verification.summarize(results)
    records = [r.record(c.name, c.computed,
                        note=f"{'pass' if c.passed else 'FAIL'} expected={c.expected:.6g} "
                             f"rel_error={c.rel_error:.2e}" + (f" {c.note}" if c.note else ""))
               for c in results]
    records.append(r.record("checks_passed", passed, note=f"of {total}"))
    args.verification_failed = passed < total
    return records


def _curve(args, r: Renderer) -> List[Tuple[Quantity, Quantity]]:
    low = _q(args, args.min_power, POWER, "--min-power").value
    high = _q(args, args.max_power, POWER, "--max-power").value
    try:
        powers = logspace_points(low, high, args.samples)
    except DomainError as e:
        raise UsageError(str(e))
    if args.quantity == "pendry":
        rate = lambda p: channel.pendry_rate(p).entropy_rate
    elif args.quantity == "blackbody3d":
        rate = lambda p: channel.surface_entropy_rate(p, 3, args.measure)
    elif args.quantity == "blackbody2d":
        rate = lambda p: channel.surface_entropy_rate(p, 2, args.measure)
    else:
        s = _species(args)
        rate = lambda p: blackhole.bh_rate_vs_power(p, s)
    return [(Quantity(value=p, dimension=POWER), rate(p)) for p in powers]


# ==================== ПАРСЕР ====================

class InfoBoundParser(argparse.ArgumentParser):
    """ArgumentParser, который бросает UsageError вместо выхода и подсказывает близкие имена"""

    def error(self, message: str):
        hint = self._suggestion(message)
        raise UsageError(message + (f" (did you mean '{hint}'?)" if hint else ""))

    def _all_names(self) -> Tuple[List[str], List[str]]:
        commands, options = [], list(self._option_string_actions)
        for action in self._actions:
            if isinstance(action, argparse._SubParsersAction):
                for name, sub in action.choices.items():
                    commands.append(name)
                    sub_commands, sub_options = sub._all_names()
                    commands += sub_commands
                    options += sub_options
        return commands, options

    def _suggestion(self, message: str) -> Optional[str]:
        commands, options = self._all_names()
        choice = re.search(r"invalid choice: '?([^'\s]+)'?", message)
        if choice:
            matches = difflib.get_close_matches(choice.group(1), commands, n=1)
            return matches[0] if matches else None
        unknown = re.search(r"unrecognized arguments: (\S+)", message)
        if unknown:
            matches = difflib.get_close_matches(unknown.group(1).split("=")[0], options, n=1)
            return matches[0] if matches else None
        return None


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--units", choices=[u.value for u in UnitSystem], default=UnitSystem.PLANCK.value,
                        help="система единиц для ввода и вывода")
    common.add_argument("--format", choices=FORMATS, default="table", dest="fmt")
    group = common.add_mutually_exclusive_group()
    group.add_argument("--bits", action="store_const", const=qinfo.EntropyUnit.BITS.value,
                       dest="entropy_unit")
    group.add_argument("--nats", action="store_const", const=qinfo.EntropyUnit.NATS.value,
                       dest="entropy_unit")
    common.set_defaults(entropy_unit=qinfo.EntropyUnit.NATS.value)
    return common


def _leaf(group, name: str, handler: Handler, common, help_text: str) -> argparse.ArgumentParser:
    p = group.add_parser(name, parents=[common], help=help_text)
    p.set_defaults(handler=handler)
    return p


def _system_flags(p: argparse.ArgumentParser, entropy: bool = False) -> None:
    p.add_argument("--energy")
    p.add_argument("--radius")
    p.add_argument("--dimension", type=int, default=3, help="пространственная размерность n")
    if entropy:
        p.add_argument("--entropy", type=float, help="энтропия системы для проверки насыщения")


def _species_flags(p: argparse.ArgumentParser, species_names: List[str]) -> None:
    p.add_argument("--species", choices=species_names, default="photon")
    p.add_argument("--statistics", choices=[s.value for s in channel.Statistics], default="boson",
                   help="для --species generic")
    p.add_argument("--gamma-bar", type=float, help="Γ̄ для --species generic")
    p.add_argument("--nu", type=float, help="ν для --species generic (INFOBOUND_DEFAULT_NU)")


def build_parser() -> InfoBoundParser:
    common = _common()
    parser = InfoBoundParser(prog="infobound", description="Информационные границы и излучение чёрных дыр")
    commands = parser.add_subparsers(dest="command", required=True)

    # qinfo
    q = commands.add_parser("qinfo", help="энтропия состояний и ансамблей")
    actions = q.add_subparsers(dest="action", required=True)
    p = _leaf(actions, "entropy", _qinfo_entropy, common, "энтропия Шеннона или фон Неймана")
    p.add_argument("--probs")
    p.add_argument("--matrix")
    for name, handler in (("mix", _qinfo_mix), ("holevo", _qinfo_holevo)):
        p = _leaf(actions, name, handler, common, "смешивание ансамбля")
        p.add_argument("--member", action="append", help="P:FILE, повторяемый")

    # bound
    b = commands.add_parser("bound", help="энтропийные границы")
    actions = b.add_subparsers(dest="action", required=True)
    p = _leaf(actions, "holographic", _bound_holographic, common, "S <= A/4")
    p.add_argument("--area")
    p.add_argument("--radius")
    p.add_argument("--dimension", type=int, default=3)
    p.add_argument("--entropy", type=float)
    _system_flags(_leaf(actions, "universal", _bound_universal, common, "S <= 2πER"), entropy=True)
    p = _leaf(actions, "poorman", _bound_poorman, common, "S < 8πνζRE")
    _system_flags(p)
    p.add_argument("--nu", type=float, default=1.5)
    p.add_argument("--zeta", type=float, default=DEFAULT_ZETA)
    p.add_argument("--no-range-check", action="store_true")
    _system_flags(_leaf(actions, "bousso", _bound_bousso, common, "D-мерная форма"))
    p = _leaf(actions, "verlinde", _bound_verlinde, common, "граница с энергией Казимира")
    _system_flags(p)
    p.add_argument("--casimir-energy")
    p = _leaf(actions, "kerr-newman", _bound_kerr_newman, common, "насыщение для Керра-Ньюмена")
    p.add_argument("--mass")
    p.add_argument("--spin", default="0")
    p.add_argument("--charge", default="0")
    _system_flags(_leaf(actions, "compare", _bound_compare, common, "какая граница жёстче"))

    # channel
    c = commands.add_parser("channel", help="ёмкость канала и излучение")
    actions = c.add_subparsers(dest="action", required=True)
    statistics = [s.value for s in channel.Statistics]
    p = _leaf(actions, "pendry", _channel_pendry, common, "предел Пендри")
    p.add_argument("--power")
    p.add_argument("--statistics", choices=statistics, default="boson")
    p = _leaf(actions, "blackbody", _channel_blackbody, common, "закон Стефана-Больцмана")
    p.add_argument("--dimension", type=int, default=3)
    p.add_argument("--measure", help="площадь (n=3) или длина (n=2)")
    p.add_argument("--temperature")
    p.add_argument("--statistics", choices=statistics, default="boson")
    p = _leaf(actions, "pulse", _channel_pulse, common, "информация в импульсе")
    p.add_argument("--energy")
    p.add_argument("--duration")
    p.add_argument("--redshift", type=float)
    p = _leaf(actions, "modes", _channel_modes, common, "энтропия моды и токи одного канала")
    p.add_argument("--temperature")
    p.add_argument("--energy", help="энергия моды")
    p.add_argument("--statistics", choices=statistics, default="boson")
    p.add_argument("--speed", type=float, default=1.0)
    p.add_argument("--exponent", type=float)
    p.add_argument("--variable", choices=["energy", "momentum"], default="energy")

    # bh
    h = commands.add_parser("bh", help="чёрная дыра")
    actions = h.add_subparsers(dest="action", required=True)
    species_names = list(blackhole.SPECIES) + [GENERIC_SPECIES]
    for name, handler in (("temperature", _bh_temperature), ("entropy", _bh_entropy)):
        _leaf(actions, name, handler, common, name).add_argument("--mass")
    p = _leaf(actions, "flux", _bh_flux, common, "поток Хокинга")
    p.add_argument("--mass")
    p.add_argument("--radius")
    p.add_argument("--species-count", type=float, default=1.0)
    p = _leaf(actions, "emission", _bh_emission, common, "мощность и энтропия излучения")
    p.add_argument("--mass")
    _species_flags(p, species_names)
    p = _leaf(actions, "ratio", _bh_ratio, common, "сравнение с одним каналом")
    _species_flags(p, species_names)
    p = _leaf(actions, "channels", _bh_channels, common, "число каналов к дыре")
    p.add_argument("--mass")
    p.add_argument("--distance")
    p.add_argument("--area")
    p = _leaf(actions, "dump", _bh_dump, common, "сброс информации")
    p.add_argument("--power")
    p.add_argument("--rate")
    p.add_argument("--channels", type=float, default=1.0)

    # gedanken
    g = commands.add_parser("gedanken", help="мысленный эксперимент")
    actions = g.add_subparsers(dest="action", required=True)
    p = _leaf(actions, "audit", _gedanken_audit, common, "проверка неравенств")
    p.add_argument("--energy")
    p.add_argument("--radius")
    p.add_argument("--energy-radius-product", type=float)
    p.add_argument("--zeta", type=float, default=DEFAULT_ZETA)
    p.add_argument("--species-count", type=float, default=SPECIES_CAP)
    p.add_argument("--n-eff", type=float)

    # curve
    p = commands.add_parser("curve", parents=[common], help="кривая Ṡ(P) для построения графиков")
    p.add_argument("quantity", choices=CURVES)
    p.add_argument("--min-power", default="1")
    p.add_argument("--max-power", default="1e4")
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--measure", type=float, default=1.0)
    _species_flags(p, species_names)
    p.set_defaults(handler=_curve, curve=True)

    # verify
    _leaf(commands, "verify", _verify, common, "сквозная проверка всех формул")
    return parser


# ==================== ЗАПУСК ====================

def _error_record(error: Exception, code: int) -> str:
    record = {"error": type(error).__name__, "message": str(error), "exit_code": code}
    if isinstance(error, AuditViolation):
        record["flags"] = error.flags
    return json.dumps(record, ensure_ascii=False)


def run(argv: Sequence[str], stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    """Разбор argv, выполнение подкоманды; возвращает код выхода 0/1/2"""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
        renderer = Renderer(args.units, args.entropy_unit, args.fmt)
        logger.debug(f"Команда: {' '.join(argv)}")
        result = args.handler(args, renderer)
        buffer = io.StringIO()
        if getattr(args, "curve", False):
            renderer.write_curve(result, buffer)
        else:
            renderer.write(result, buffer)
        stdout.write(buffer.getvalue())
        report = getattr(args, "audit_report", None)
        if report is not None:
            report.raise_for_violations()
        if getattr(args, "verification_failed", False):
            raise DomainError("verification checks failed")
        return 0
    except UsageError as e:
        stderr.write(_error_record(e, 2) + "\n")
        return 2
    except (DomainError, ValidationError, QuadratureError) as e:
        logger.info(f"Ошибка предметной области: {e}")
        stderr.write(_error_record(e, 1) + "\n")
        return 1
    except InfoBoundError as e:
        stderr.write(_error_record(e, 1) + "\n")
        return 1
    except SystemExit as e:
        # --help
        return int(e.code or 0)

