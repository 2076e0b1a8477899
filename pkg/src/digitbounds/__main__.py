from digitbounds.cli import main

main()
