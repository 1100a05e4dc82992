"""Command-line entry point: ``roishape <command> [flags]``.

Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
import numpy as np

from . import io as rio
from .analysis import link_budget, omega_histogram
from .combinatorics import DomainError, rate_loss_dc, rate_loss_fdc
from .figures import FIGURES, LOW_RATE_SNR, MFTP_S, regenerate_figures, runlength_reports
from .polar import sc_decode, systematic_encode
from .shaping import FrameError, fdc_decode, fdc_encode
from .simulation import SystemConfig, fer_sweep, low_rate_ber_sweep, resolve_threads


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("system")
    g.add_argument("--n", type=int, default=100, help="shaped word length (default 100)")
    g.add_argument("--upsilon0", type=float, default=0.36, help="upper ones-ratio of the logic-0 range")
    g.add_argument("--l", type=int, default=128, help="polar code length")
    g.add_argument("--design-snr", type=float, default=0.0, help="construction SNR in dB")
    g.add_argument("--frozen-mode", choices=["rla", "all_zero"], default="rla")
    g.add_argument("--decoder", choices=["sd", "hd"], default="sd")
    g.add_argument("--f-function", choices=["minsum", "exact"], default="minsum")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--threads", type=int, default=None, help="worker processes (env ROISHAPE_THREADS)")
    g.add_argument("--out", default=None, help="output file or directory")
    return p


def _sweep_flags(p):
    p.add_argument("--snr-start", type=float)
    p.add_argument("--snr-stop", type=float)
    p.add_argument("--snr-step", type=float, default=0.5)
    p.add_argument("--frames", type=int, default=10_000)


def build_parser() -> argparse.ArgumentParser:
    parent = _common()
    parser = _Parser(prog="roishape", description="Probabilistic shaping for optical RoI signaling.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("construct", parents=[parent], help="write the polar code-spec file")
    sub.add_parser("info", parents=[parent], help="print codebook and code parameters")

    for name in ("encode", "decode"):
        p = sub.add_parser(name, parents=[parent], help=f"{name} a frame file")
        p.add_argument("--in", dest="infile", required=True)
        p.add_argument("--fec", action="store_true", help="include the systematic polar code")
        if name == "encode":
            p.add_argument("--v", type=int, choices=[0, 1], default=0, help="low-rate bit for every frame")
        else:
            p.add_argument("--v-out", help="write the recovered low-rate bit of each frame here")

    p = sub.add_parser("simulate", parents=[parent], help="Monte-Carlo BER/FER sweep (CSV)")
    _sweep_flags(p)

    p = sub.add_parser("analyze", parents=[parent], help="histogram / run-length / low-rate / link budget")
    p.add_argument("what", choices=["histogram", "runlength", "lowrate", "linkbudget"])
    p.add_argument("--encoder", choices=["systematic", "nonsystematic"], default="systematic")
    _sweep_flags(p)

    p = sub.add_parser("figures", parents=[parent], help="regenerate figure CSVs")
    p.add_argument("which", choices=[*FIGURES, "all"])
    _sweep_flags(p)
    return parser


def _config(args) -> SystemConfig:
    return SystemConfig(
        n=args.n,
        upsilon0=args.upsilon0,
        l=args.l,
        design_snr_db=args.design_snr,
        frozen_mode=args.frozen_mode,
        decoder=args.decoder,
        f_function=args.f_function,
        master_seed=args.seed,
        threads=resolve_threads(args.threads),
    )


def _snr_list(args, default=None):
    if args.snr_start is None and args.snr_stop is None:
        if default is None:
            raise UsageError("--snr-start and --snr-stop are required")
        return list(default)
    if args.snr_start is None or args.snr_stop is None or args.snr_step <= 0:
        raise UsageError("give both --snr-start and --snr-stop and a positive --snr-step")
    return [round(s, 6) for s in np.arange(args.snr_start, args.snr_stop + args.snr_step / 2, args.snr_step)]


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _encode(args, cfg):
    cb, spec = cfg.codebook, cfg.code
    msgs = rio.read_frames(args.infile, cb.k)
    words = np.array([fdc_encode(cb, args.v, m) for m in msgs], dtype=np.uint8).reshape(len(msgs), cb.n)
    if args.fec:
        words = systematic_encode(spec, words)
    _emit(args, rio.format_frames(words))


def _decode(args, cfg):
    cb, spec = cfg.codebook, cfg.code
    words = rio.read_frames(args.infile, spec.l if args.fec else cb.n)
    if args.fec and len(words):
        _, words = sc_decode(spec, 1.0 - 2.0 * words, cfg.f_function)
    msgs, vs = [], []
    for no, w in enumerate(words, start=1):
        try:
            v, m = fdc_decode(cb, w)
        except FrameError as exc:
            raise rio.FrameFileError(args.infile, no, str(exc)) from exc
        msgs.append(m)
        vs.append(v)
    _emit(args, rio.format_frames(msgs))
    if args.v_out:
        with open(args.v_out, "w") as fh:
            fh.writelines(f"{v}\n" for v in vs)


def _info(cfg) -> str:
    cb, spec = cfg.codebook, cfg.code
    fdc = rate_loss_fdc(cb.n, cfg.upsilon0)
    dc = rate_loss_dc(cb.n, cb.w_max)
    lines = [
        f"shaping    n={cb.n} w_max={cb.w_max} upsilon0={cb.upsilon0:.4f} upsilon1={cb.upsilon1:.4f}",
        f"codebook   Z={cb.Z} (2^{cb.Z.bit_length() - 1}.x) k={cb.k}",
        f"rate loss  FDC={float(fdc.delta):.4f}  DC(m={cb.w_max})={float(dc.delta):.4f} (k={dc.k})",
        f"polar      l={spec.l} n_info={spec.n_info} R={spec.rate:.4f} design_snr={spec.design_snr_db} dB "
        f"mode={spec.frozen_mode.value}",
        f"frozen     {spec.frozen_set.tolist()}",
        f"values     {''.join(map(str, spec.frozen_values))}",
        f"spectral   {cb.k / cb.n:.4f} (bits/s)/Hz FEC excluded, {cb.k / spec.l:.4f} FEC included",
    ]
    return "\n".join(lines) + "\n"


def _analyze(args, cfg) -> str:
    if args.what == "histogram":
        h = [omega_histogram(cfg.codebook, cfg.code, args.encoder, v, args.frames, cfg.master_seed) for v in (0, 1)]
        return rio.histogram_csv(*h)
    if args.what == "runlength":
        return rio.runlength_csv(runlength_reports(cfg, args.frames))
    if args.what == "lowrate":
        return rio.sweep_csv(low_rate_ber_sweep(cfg, _snr_list(args, LOW_RATE_SNR), args.frames), stream="low")
    gamma = runlength_reports(cfg, args.frames)[cfg.frozen_mode].gamma
    b = link_budget(gamma, MFTP_S, cfg.k, cfg.n, cfg.l, Fraction(gamma) / Fraction(str(MFTP_S)))
    return rio.link_budget_csv({"measured": b})


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        if args.command == "construct":
            text = json.dumps(rio.code_spec_to_dict(cfg.code), indent=1) + "\n"
            _emit(args, text)
        elif args.command == "info":
            _emit(args, _info(cfg))
        elif args.command == "encode":
            _encode(args, cfg)
        elif args.command == "decode":
            _decode(args, cfg)
        elif args.command == "simulate":
            if args.frames <= 0:
                raise UsageError("--frames must be positive")
            _emit(args, rio.sweep_csv(fer_sweep(cfg, _snr_list(args), args.frames)))
        elif args.command == "analyze":
            if args.frames <= 0:
                raise UsageError("--frames must be positive")
            _emit(args, _analyze(args, cfg))
        elif args.command == "figures":
            snrs = _snr_list(args, default=()) or None
            for path in regenerate_figures(args.which, cfg, args.out or ".", args.frames, snrs):
                print(path)
    except (rio.FrameFileError, FrameError) as exc:
        print(f"roishape: data error: {exc}", file=sys.stderr)
        return 2
    except (UsageError, DomainError, ValueError) as exc:
        print(f"roishape: usage error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"roishape: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
