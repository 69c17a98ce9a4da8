from qh_alcove.cli import main

main()
