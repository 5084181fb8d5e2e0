#!/usr/bin/env python3
"""
xinner - X-inner automorphisms of quantum algebras
"""

from setuptools import setup, find_packages


# Read the README file
def read_readme():
    with open("README.md", "r", encoding="utf-8") as fh:
        return fh.read()


setup(
    name="xinner",
    version="1.0.0",
    author="xinner Development Team",
    description="Normal forms, Ore extensions and X-inner automorphism checks "
    "for quantum spaces and color enveloping algebras",
    long_description=read_readme(),
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "tests.*"]),
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Operating System :: OS Independent",
    ],
    python_requires=">=3.8",
    install_requires=[
        "sympy>=1.9",
        "numpy>=1.19.0",
    ],
    extras_require={
        "dev": [
            "pytest>=6.0.0",
            "pytest-cov>=2.0.0",
            "black>=21.0.0",
            "flake8>=3.8.0",
            "mypy>=0.800.0",
            "sphinx>=4.0.0",
            "sphinx-rtd-theme>=0.5.0",
            "myst-parser>=0.15.0",
        ],
    },
    entry_points={
        "console_scripts": [
            "xinner=xinner.cli:main",
            "xinner-weyl-demo=xinner.examples.weyl_demo:main",
        ],
    },
    include_package_data=True,
    package_data={
        "xinner": [
            "config/*.json",
            "examples/*.qalg",
        ],
    },
    zip_safe=False,
    keywords="noncommutative algebra, quantum plane, ore extension, weyl algebra, "
    "lie color algebra, automorphism, rewriting",
)
