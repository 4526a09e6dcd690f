from setuptools import setup, find_packages

setup(
    name="bergman-toolkit",
    version="1.0.0",
    packages=find_packages(exclude=["tests", "tests.*"]),
    py_modules=["main"],
    install_requires=[
        "numpy",
        "scipy",
    ],
    extras_require={
        "test": ["pytest", "hypothesis"],
    },
    entry_points={
        'console_scripts': [
            'bergman-toolkit=main:main',
        ],
    },
)
