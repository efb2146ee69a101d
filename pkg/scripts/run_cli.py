import os
import sys
import json
import signal
import argparse
from dotenv import load_dotenv
from src.utils.config import validate_config
from src.utils.io import load_config
from src.cli.commands import cmd_estimate, cmd_lowerbound, cmd_reproduce, cmd_simulate

WORKERS_ENV = 'FOURIER_NULL_WORKERS'

_interrupted = False

def signal_handler(signum, frame):
    """Handle Ctrl+C and other interrupts"""
    global _interrupted

    if _interrupted:
        print("\nForce quitting immediately...")
        sys.exit(1)

    _interrupted = True
    print(f"\n{'='*60}")
    print("INTERRUPTED - Stopping worker processes...")
    print("Press Ctrl+C again to force quit immediately.")
    print(f"{'='*60}")

    cleanup_on_interrupt()
    sys.exit(130 if signum == signal.SIGINT else 1)

def cleanup_on_interrupt():
    """Terminate replication workers left by the process pool"""
    try:
        import psutil
        children = psutil.Process().children(recursive=True)
        for child in children:
            try:
                child.terminate()
            except psutil.Error:
                pass
        psutil.wait_procs(children, timeout=5)
        print(f'Terminated {len(children)} worker processes.')
    except ImportError:
        pass

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description='Fourier estimation of the null distribution and the nonnull proportion'
    )
    sub = parser.add_subparsers(dest='command', required=True)

    def common(p):
        p.add_argument('--config', type=str, help='JSON config file; flags override its values.')
        p.add_argument('--output', type=str, help='Output file (estimate) or directory.')

    estimate = sub.add_parser('estimate', help='Estimate from a CSV of z-scores.')
    common(estimate)
    estimate.add_argument('--input', type=str, help='One-column CSV of z-scores, optional header "z".')
    estimate.add_argument('--gamma', type=float)
    estimate.add_argument('--null-mode', dest='null_mode', choices=('estimate', 'known'))
    estimate.add_argument('--u0', type=float)
    estimate.add_argument('--sigma0', type=float)

    simulate = sub.add_parser('simulate', help='Run one simulation setting.')
    common(simulate)
    simulate.add_argument('--setting', type=str)
    simulate.add_argument('--gamma', type=float)
    simulate.add_argument('--seed', dest='master_seed', type=int)
    simulate.add_argument('-n', '--n', type=int)
    simulate.add_argument('--replications', type=int)
    simulate.add_argument('--workers', type=int)

    reproduce = sub.add_parser('reproduce', help='Reproduce a published table or figure.')
    common(reproduce)
    reproduce.add_argument('--target', type=str)
    reproduce.add_argument('--seed', type=int)
    reproduce.add_argument('--scale', type=float)
    reproduce.add_argument('--workers', type=int)

    lowerbound = sub.add_parser('lowerbound', help='Build and verify a least-favorable pair.')
    common(lowerbound)
    lowerbound.add_argument('--kind', choices=('variance', 'mean', 'proportion'))
    lowerbound.add_argument('-n', '--n', type=int)
    lowerbound.add_argument('--tol', type=float)
    lowerbound.add_argument('--dump-csv', dest='dump_csv', action='store_true', default=None)
    return parser

def merged_config(args: argparse.Namespace) -> dict:
    """Config file values overridden by the flags that were given."""
    tree = load_config(args.config) if args.config else {}
    flags = {
        key: value for key, value in vars(args).items()
        if key not in ('command', 'config', 'workers') and value is not None
    }
    tree.update(flags)
    return tree

def resolve_workers(flag: int | None, config: dict) -> int:
    if flag is not None:
        return flag
    if config.get('workers') is not None:
        return config['workers']
    return int(os.getenv(WORKERS_ENV, '1'))

def results_dir(config: dict) -> str:
    if config.get('output'):
        return config['output']
    paths_config = load_config(os.path.join('config', 'paths.json'))
    return paths_config['results']['dir']

# Set up signal handlers
signal.signal(signal.SIGINT, signal_handler)
signal.signal(signal.SIGTERM, signal_handler)

if __name__ == '__main__':
    args = build_parser().parse_args()
    load_dotenv()

    try:
        config = validate_config(args.command, merged_config(args))

        if args.command == 'estimate':
            result, status = cmd_estimate(config)
            print(json.dumps(result, indent=4))
        elif args.command == 'simulate':
            workers = resolve_workers(args.workers, config)
            _, status = cmd_simulate(config, results_dir(config), workers)
        elif args.command == 'reproduce':
            workers = resolve_workers(args.workers, config)
            _, status = cmd_reproduce(config, results_dir(config), workers)
        else:
            report, status = cmd_lowerbound(config, results_dir(config))
            print('\nAll checks passed.' if report['passed'] else '\nSome checks FAILED.')

        sys.exit(status)

    except SystemExit:
        raise
    except Exception as e:
        print(f"\nPipeline failed with error: {e}")
        import traceback
        traceback.print_exc()
        sys.exit(1)
