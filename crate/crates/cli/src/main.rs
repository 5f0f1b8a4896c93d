fn main() {
    println!("ssl laboratory: experiments not wired yet");
}
