#!/usr/bin/env python3
"""
Скрипт для запуска сквозной проверки всех формул
"""
import subprocess
import sys
from pathlib import Path


def run_verification(extra_args=None):
    """Запуск `main.py verify` в отдельном процессе; возвращает код выхода"""
    main_path = Path(__file__).parent.parent / "src" / "main.py"

    if not main_path.exists():
        print(f"❌ Файл не найден: {main_path}")
        return 1

    print("🚀 Запуск проверки формул...")
    print("-" * 50)

    try:
        completed = subprocess.run(
            [sys.executable, str(main_path), "verify", *(extra_args or [])],
            check=False,
        )
    except KeyboardInterrupt:
        print("\n👋 Остановка проверки...")
        return 130

    if completed.returncode == 0:
        print("✅ Все проверки пройдены")
    else:
        print(f"❌ Проверка завершилась с кодом {completed.returncode}")
    return completed.returncode


if __name__ == "__main__":
    sys.exit(run_verification(sys.argv[1:]))
