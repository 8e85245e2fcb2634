from .management.base import main

if __name__ == "__main__":
    main()
