#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Ana uygulama modülü

Alt komutlar: train, compare, eval, tabular-verify, gradcheck.
Çıkış kodları: 0 başarı, 1 kullanım hatası, 2 çalışma hatası, 3 doğrulama hatası.
"""

import os
import sys
import logging
import argparse

from utils.config import Config
from utils.errors import ConfigError, VerificationError, SdsraError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2
EXIT_VERIFICATION = 3


class UsageError(Exception):
    """
    Komut satırı kullanım hatası
    """


class ArgumentParser(argparse.ArgumentParser):
    """
    Kullanım hatalarında sistemden çıkmak yerine UsageError fırlatır
    """

    def error(self, message):
        raise UsageError(message)


def setup_logging(config, level=None):
    """
    Loglama ayarlarını yapılandırır

    Args:
        config (Config): Uygulama yapılandırması
        level (str, optional): Yapılandırmadaki seviyeyi geçersiz kılar

    Returns:
        logging.Logger: Modül kaydedicisi
    """
    base_dir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    log_file = config.get("logging", "file", "logs/sdsra.log")
    if not os.path.isabs(log_file):
        log_file = os.path.join(base_dir, log_file)
    os.makedirs(os.path.dirname(log_file), exist_ok=True)

    logging.basicConfig(
        level=getattr(logging, (level or config.get("logging", "level", "INFO")).upper(), logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=[
            logging.FileHandler(log_file, encoding="utf-8"),
            logging.StreamHandler()
        ],
        force=True
    )

    return logging.getLogger(__name__)


def build_parser():
    """
    Komut satırı ayrıştırıcısını oluşturur
    """
    parser = ArgumentParser(prog="sdsra", description="SDSRA ve SAC deney aracı")
    parser.add_argument("--log-level", default=None, help="Loglama seviyesi (DEBUG, INFO, ...)")
    parser.add_argument("--app-config", default=None, help="Uygulama yapılandırma dosyası (config.json)")
    sub = parser.add_subparsers(dest="command", required=True)

    train = sub.add_parser("train", help="Yapılandırmadaki tohumlarla eğitim")
    train.add_argument("config", help="Deney yapılandırma dosyası")
    train.add_argument("--xlsx", default=None, help="Günlükleri Excel'e aktar")

    compare = sub.add_parser("compare", help="İki yapılandırmayı karşılaştır")
    compare.add_argument("config_a")
    compare.add_argument("config_b")
    compare.add_argument("--xlsx", default=None, help="Raporu Excel'e aktar")
    compare.add_argument("--pdf", default=None, help="Raporu PDF'e aktar")

    evaluate = sub.add_parser("eval", help="Kontrol noktasını değerlendir")
    evaluate.add_argument("checkpoint")
    evaluate.add_argument("config")

    verify = sub.add_parser("tabular-verify", help="Tablo MDP özellik takımı")
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--cases", type=int, default=100)

    grad = sub.add_parser("gradcheck", help="Sonlu fark gradyan denetimi")
    grad.add_argument("--seed", type=int, default=0)
    grad.add_argument("--cases", type=int, default=100)
    return parser


def _command_train(args, app_config):
    from utils.run_config import load_run_config
    from experiment.runner import run_train
    return run_train(load_run_config(args.config), app_config, xlsx_path=args.xlsx)


def _command_compare(args, app_config):
    from utils.run_config import load_run_config
    from experiment.runner import run_compare
    config_a = load_run_config(args.config_a)
    config_b = load_run_config(args.config_b)
    if config_a.env != config_b.env or config_a.total_steps != config_b.total_steps:
        raise UsageError("Karşılaştırılan yapılandırmalar aynı ortamı ve toplam adımı kullanmalıdır")
    report, status = run_compare(config_a, config_b, app_config, xlsx_path=args.xlsx, pdf_path=args.pdf)
    print(report.as_table())
    return status


def _command_eval(args, app_config):
    from utils.run_config import load_run_config
    from experiment.runner import run_eval
    mean_return, mean_entropy, mixture_entropy = run_eval(args.checkpoint, load_run_config(args.config))
    print(f"ortalama getiri: {mean_return:.6g}")
    print(f"ortalama entropi: {mean_entropy:.6g}")
    print(f"karışım entropisi: {mixture_entropy:.6g}")
    return EXIT_OK


def _command_verify(args, app_config):
    from tabular.verification import run_verification
    report = run_verification(seed=args.seed, cases=args.cases)
    print(report.as_table())
    return EXIT_OK if report.passed else EXIT_VERIFICATION


def _command_gradcheck(args, app_config):
    from experiment.gradcheck import run_gradcheck
    report = run_gradcheck(seed=args.seed, cases=args.cases)
    print(report.as_table())
    return EXIT_OK if report.passed else EXIT_VERIFICATION


COMMANDS = {
    "train": _command_train,
    "compare": _command_compare,
    "eval": _command_eval,
    "tabular-verify": _command_verify,
    "gradcheck": _command_gradcheck,
}


def main(argv=None):
    """
    Ana uygulama fonksiyonu

    Args:
        argv (list, optional): Komut satırı argümanları

    Returns:
        int: Çıkış kodu
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"Kullanım hatası: {str(e)}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE

    app_config = Config(args.app_config)
    logger = setup_logging(app_config, args.log_level)
    logger.info(f"Komut başlatılıyor: {args.command}")

    try:
        if getattr(args, "cases", 1) <= 0:
            raise UsageError("--cases pozitif olmalıdır")
        status = COMMANDS[args.command](args, app_config)
    except (UsageError, ConfigError, FileNotFoundError) as e:
        logger.error(f"Kullanım hatası: {str(e)}")
        return EXIT_USAGE
    except VerificationError as e:
        logger.error(f"Doğrulama hatası: {str(e)}")
        return EXIT_VERIFICATION
    except (SdsraError, OSError, ValueError, RuntimeError) as e:
        logger.error(f"Çalışma hatası: {str(e)}")
        return EXIT_RUNTIME

    logger.info(f"Komut tamamlandı: {args.command} (çıkış kodu {status})")
    return status


if __name__ == "__main__":
    sys.exit(main())
