from .cli_store import main

main()
