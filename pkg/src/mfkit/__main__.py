from mfkit.cli import console

console()
