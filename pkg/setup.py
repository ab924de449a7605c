from setuptools import setup, find_packages

with open('requirements.txt') as f:
    requirements = f.read().splitlines()

setup(
    name="delayRC",
    version="0.1",
    description="Reservoir computing with output-layer time delays.",
    packages=find_packages(exclude=["tests"]),
    package_data={"delayRC.runner": ["presets/*.yaml"]},
    install_requires=requirements,
    entry_points={"console_scripts": ["delay-rc=delayRC.runner.cli:main"]},
)
